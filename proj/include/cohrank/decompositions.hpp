#pragma once

// Explicit pure-state ensembles that witness coherence-rank upper bounds.

#include <vector>

#include "cohrank/matrix_kernel.hpp"

namespace cohrank {

struct EnsembleMember {
  double weight;
  PureState state;
};

class WeightedEnsemble {
 public:
  /// Checks weights >= -1e-12, sum within 1e-9 of one, and a shared dimension.
  WeightedEnsemble(std::vector<EnsembleMember> members, Index target_dim);

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  Index target_dim() const noexcept { return target_dim_; }
  std::size_t size() const noexcept { return members_.size(); }
  double weight_sum() const;

 private:
  std::vector<EnsembleMember> members_;
  Index target_dim_;
};

struct EnsembleReport {
  double reconstruction_trace_distance = 0.0;
  int max_member_rank = 0;
  double weight_sum = 0.0;
  bool feasible = false;
};

/// Default reconstruction tolerance used for EnsembleReport::feasible.
inline constexpr double kReconstructionTolerance = 1e-9;

/// Rank-2 ensemble for omega(alpha)^{(x) n}: one pair_state per unordered pair
/// of distinct n-bit strings with weight 2 alpha^{hamming}/2^n, followed by the
/// basis states carrying the residual (2 - (1+alpha)^n)/2^n. Zero-weight
/// members are dropped. Throws InfeasibleError (boundary 2^{1/n} - 1) when the
/// residual would be negative.
WeightedEnsemble decompose_omega_power(double alpha, int n,
                                       std::size_t cap = kDefaultDimensionCap);

/// True when the residual weight (2 - (1+alpha)^n)/2^n is non-negative.
bool omega_power_feasible(double alpha, int n);

/// Largest alpha for which decompose_omega_power succeeds at n copies.
double omega_power_boundary(int n);

/// The d states fourier_dual_state(d, j), each with weight 1/d.
WeightedEnsemble decompose_rho_d(int d);

/// Sum of w_i |psi_i><psi_i|.
ComplexMatrix reconstruct(const WeightedEnsemble& ens);

EnsembleReport verify_ensemble(const WeightedEnsemble& ens, const DensityMatrix& target,
                               double tau_amp = 1e-8,
                               double tol_recon = kReconstructionTolerance);

/// Lifts every member |psi> to sum_i psi_i |ii>.
WeightedEnsemble mc_lift(const WeightedEnsemble& ens);

}  // namespace cohrank
