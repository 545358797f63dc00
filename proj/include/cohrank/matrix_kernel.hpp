#pragma once

// Dense complex matrix primitives shared by every other module:
// dephasing, Kronecker powers, Hermitian spectra, partial transpose and norms.
//
// All functions are pure. DensityMatrix and PureState are immutable value
// types; their factories either validate the invariants or, for constructions
// that are valid by definition, skip the (eigen-solver backed) check.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cohrank/errors.hpp"

namespace cohrank {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

struct Tolerances {
  double herm = 1e-9;
  double trace = 1e-9;
  double norm = 1e-9;
  /// Relative PSD slack: the absolute slack is psd_rel * dim * max|entry|.
  double psd_rel = 1e-10;
  /// Amplitude modulus above which a coefficient counts toward coherence rank.
  double amp = 1e-8;
  /// Off-block modulus allowed when unlifting a maximally correlated state.
  double mc = 1e-12;
  /// Trace-norm slack for the dephasing-covariance check.
  double cov = 1e-9;
  /// Diagonal entries at or below this are treated as outside the support.
  double diag = 1e-14;
  /// Off-diagonal modulus above which a state counts as nondiagonal.
  double offdiag = 1e-12;
};

/// Which named construction produced a state. Used to gate family-specific
/// facts (analytic rank floors, ensemble witnesses) on how a value was built.
struct Provenance {
  enum class Family { omega_power, rho_d };
  Family family = Family::omega_power;
  double alpha = 0.0;
  int copies = 1;
  int d = 0;
  /// True when the state is the maximally correlated lift of the construction.
  bool lifted = false;

  bool operator==(const Provenance&) const = default;
};

struct ValidationReport {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  double psd_slack = 0.0;
  bool hermitian = false;
  bool unit_trace = false;
  bool psd = false;
  bool valid() const { return hermitian && unit_trace && psd; }
};

ValidationReport validate_density(const ComplexMatrix& m,
                                  const Tolerances& tol = {});

class DensityMatrix {
 public:
  /// Validates Hermiticity, trace and PSD; throws InvalidStateError.
  static DensityMatrix from_matrix(ComplexMatrix m, const Tolerances& tol = {});
  /// For constructions that are density matrices by definition.
  static DensityMatrix trusted(ComplexMatrix m,
                               std::optional<Provenance> prov = std::nullopt);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  const std::optional<Provenance>& provenance() const noexcept { return prov_; }
  DensityMatrix with_provenance(std::optional<Provenance> prov) const;

 private:
  DensityMatrix(ComplexMatrix m, std::optional<Provenance> prov)
      : m_(std::move(m)), prov_(std::move(prov)) {}

  ComplexMatrix m_;
  std::optional<Provenance> prov_;
};

class PureState {
 public:
  /// Requires |<psi|psi> - 1| <= tol.norm.
  static PureState from_amplitudes(ComplexVector amps, const Tolerances& tol = {});
  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(ComplexVector amps);

  const ComplexVector& amplitudes() const noexcept { return a_; }
  Index dim() const noexcept { return a_.size(); }
  Complex operator[](Index i) const { return a_(i); }

  ComplexMatrix projector() const { return a_ * a_.adjoint(); }
  DensityMatrix density() const { return DensityMatrix::trusted(projector()); }

 private:
  explicit PureState(ComplexVector a) : a_(std::move(a)) {}
  ComplexVector a_;
};

ComplexMatrix identity(Index dim);
void require_square(const ComplexMatrix& m, const char* op);

double max_abs_entry(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);
/// Absolute PSD slack for m under tol.psd_rel.
double psd_tolerance(const ComplexMatrix& m, const Tolerances& tol = {});

/// Zeroes every off-diagonal entry.
ComplexMatrix dephase(const ComplexMatrix& m);
DensityMatrix dephase(const DensityMatrix& rho);
bool is_diagonal(const ComplexMatrix& m, double tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// n-fold Kronecker power; the leftmost factor carries the most significant
/// index. Throws DimensionError when dim^n exceeds cap.
ComplexMatrix tensor_power(const ComplexMatrix& m, int n,
                           std::size_t cap = kDefaultDimensionCap);

/// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> spectrum(const ComplexMatrix& m, const Tolerances& tol = {});
double min_eigenvalue(const ComplexMatrix& m, const Tolerances& tol = {});
double max_eigenvalue(const ComplexMatrix& m, const Tolerances& tol = {});

/// Transposes subsystem B of a dimA x dimB operator.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Index dimA, Index dimB);

/// Traces out subsystem B (keep_first) or subsystem A.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index dimA, Index dimB,
                            bool keep_first);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cohrank
