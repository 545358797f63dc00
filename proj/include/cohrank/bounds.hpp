#pragma once

// Coherence-rank and Schmidt-number lower bounds, rank certificates, and the
// zero-error / regularized / asymptotic cost quantities for omega(alpha).

#include <optional>
#include <string>
#include <utility>

#include "cohrank/decompositions.hpp"
#include "cohrank/matrix_kernel.hpp"

namespace cohrank {

enum class LowerMethod { l1, negativity, analytic_family, nondiagonality };
enum class UpperMethod { ensemble_witness, eigenvector_ensemble, pure_rank };
enum class FamilyHint { omega_power, rho_d };

std::string to_string(LowerMethod m);
std::string to_string(UpperMethod m);

struct RankCertificate {
  int lower = 1;
  std::optional<int> upper;
  LowerMethod lower_method = LowerMethod::l1;
  UpperMethod upper_method = UpperMethod::eigenvector_ensemble;
  /// Present when upper_method is ensemble_witness.
  std::optional<WeightedEnsemble> witness;

  bool exact() const { return upper && *upper == lower; }
};

/// Sum of off-diagonal moduli.
double l1_norm(const ComplexMatrix& m);
double l1_norm(const DensityMatrix& rho);

/// ceil(||rho||_l1 + 1 - 1e-9).
int l1_rank_lower_bound(const ComplexMatrix& m);
int l1_rank_lower_bound(const DensityMatrix& rho);

/// (||rho^Gamma||_1 - 1) / 2 with the transpose taken on subsystem B.
double negativity(const DensityMatrix& rho_hat, Index dimA, Index dimB);

/// ceil(2 N + 1 - 1e-9).
int negativity_rank_lower_bound(const DensityMatrix& rho_hat, Index dimA, Index dimB);

/// Smallest lambda with lambda * Delta(rho) - rho >= 0. Computed as the top
/// eigenvalue of D^{-1/2} rho D^{-1/2} on the support of D = Delta(rho);
/// diagonal entries <= tol.diag are dropped.
double delta_robustness(const DensityMatrix& rho, const Tolerances& tol = {});

/// Smallest integer d satisfying the robustness condition, ceil(lambda - 1e-9).
int dilution_dimension(const DensityMatrix& rho, const Tolerances& tol = {});

/// Coherence-rank certificate. The analytic d+1 floor applies only to states
/// built by rho_d; a hint selects the family witness when the state's
/// provenance matches it. Otherwise the upper bound is the largest coherence
/// rank among eigenvectors with nonzero eigenvalue.
RankCertificate rank_certificate(const DensityMatrix& rho,
                                 std::optional<FamilyHint> hint = std::nullopt,
                                 const Tolerances& tol = {});

/// Schmidt-number certificate for a dimA x dimB state. Maximally correlated
/// states reduce to the coherence certificate of their unlift (witness
/// members are lifted back); other states get the negativity bound and an
/// eigenvector Schmidt-rank upper bound.
RankCertificate schmidt_certificate(const DensityMatrix& rho_hat, Index dimA, Index dimB,
                                    std::optional<FamilyHint> hint = std::nullopt,
                                    const Tolerances& tol = {});

/// For 0 < alpha <= sqrt(2) - 1: (log2(1+alpha), 1/floor(1/log2(1+alpha))).
std::pair<double, double> regularized_cost_bounds(double alpha);

/// -x log2 x - (1-x) log2(1-x) with h(0) = h(1) = 0.
double binary_entropy(double x);

/// h((1 - sqrt(1 - alpha^2))/2).
double entanglement_cost_omega(double alpha);

struct CostReport {
  double alpha = 0.0;
  int copies = 1;
  /// Per-copy zero-error cost log2(r)/n as an interval; the endpoints agree
  /// when the rank of omega^{(x) n} is certified exactly.
  double zero_error_lower = 0.0;
  double zero_error_upper = 0.0;
  bool zero_error_certified = false;
  std::optional<int> certified_rank;
  double regularized_lower = 0.0;
  double regularized_upper = 0.0;
  std::optional<double> asymptotic_ec;
};

/// Cost report for the lifted omega(alpha) family at n copies. Throws
/// Error if the chain E_c <= reg_lower <= reg_upper <= zero_error fails.
CostReport cost_report(double alpha, int n, std::size_t cap = kDefaultDimensionCap,
                       const Tolerances& tol = {});

}  // namespace cohrank
