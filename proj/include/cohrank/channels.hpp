#pragma once

// Dephasing-covariant (DIO) channels in Choi form.
//
// Choi convention: Omega = (id (x) Lambda)(sum_ij |ii><jj|) on input (x) output,
// unnormalized, and Lambda(sigma) = Tr_in[(sigma^T (x) I) Omega].

#include <optional>

#include "cohrank/matrix_kernel.hpp"

namespace cohrank {

/// Any linear map given by its Choi matrix. Used for validation of maps that
/// were not synthesized here.
struct ChoiChannel {
  Index input_dim = 0;
  Index output_dim = 0;
  ComplexMatrix choi;
};

/// Choi matrix of sigma -> K sigma K^dag.
ChoiChannel choi_of_kraus(const ComplexMatrix& kraus);
/// Choi matrix of the full dephasing map on dimension d.
ChoiChannel dephasing_channel(Index d);

/// The phi_d -> rho channel Omega = phi_d (x) A + (I - phi_d) (x) B with
/// A = D + Z, B = D - Z/(d-1), D = Delta(rho), Z = rho - Delta(rho).
class DioChannel {
 public:
  const ChoiChannel& channel() const noexcept { return ch_; }
  Index input_dim() const noexcept { return ch_.input_dim; }
  Index output_dim() const noexcept { return ch_.output_dim; }
  const ComplexMatrix& choi() const noexcept { return ch_.choi; }
  const ComplexMatrix& component_a() const noexcept { return a_; }
  const ComplexMatrix& component_b() const noexcept { return b_; }
  const ComplexMatrix& component_d() const noexcept { return d_; }
  const ComplexMatrix& component_z() const noexcept { return z_; }
  /// Provenance of the synthesis target, reattached to outputs on phi_d input.
  const std::optional<Provenance>& target_provenance() const noexcept { return prov_; }

 private:
  friend DioChannel dio_synthesize(const DensityMatrix&, int, const Tolerances&);
  ChoiChannel ch_;
  ComplexMatrix a_, b_, d_, z_;
  std::optional<Provenance> prov_;
};

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double psd_slack = 0.0;
  /// max |Tr_out Omega - I|.
  double partial_trace_error = 0.0;
  bool passed = false;
};

struct CovarianceReport {
  double max_violation = 0.0;
  int basis_size = 0;
  bool passed = false;
};

/// min eig(d Delta(rho) - rho) >= -tol_psd.
bool dio_feasible(const DensityMatrix& rho, int d, const Tolerances& tol = {});

/// Throws InfeasibleError when B has an eigenvalue below -tol_psd.
DioChannel dio_synthesize(const DensityMatrix& rho, int d, const Tolerances& tol = {});

/// Lambda applied to an arbitrary operator.
ComplexMatrix apply_choi(const ChoiChannel& ch, const ComplexMatrix& sigma);
DensityMatrix apply_choi(const ChoiChannel& ch, const DensityMatrix& sigma);
/// As above; when sigma is the maximally coherent input the output carries
/// the target's provenance.
DensityMatrix apply_choi(const DioChannel& ch, const DensityMatrix& sigma);

CptpReport check_cptp(const ChoiChannel& ch, const Tolerances& tol = {});

/// max over matrix units E_ij of ||Lambda(Delta(E_ij)) - Delta(Lambda(E_ij))||_1.
CovarianceReport check_dephasing_covariance(const ChoiChannel& ch, const Tolerances& tol = {});
inline CovarianceReport check_dephasing_covariance(const DioChannel& ch,
                                                   const Tolerances& tol = {}) {
  return check_dephasing_covariance(ch.channel(), tol);
}

/// max |(1/d)A + (1 - 1/d)B - Delta(A)| and |Delta(A) - Delta(B)| entrywise.
double dio_constraint_residual(const DioChannel& ch);

struct UzReport {
  /// max |U_Z rho_d U_Z^dag - (Delta(rho_d) - Z)|.
  double conjugation_residual = 0.0;
  double min_eigenvalue = 0.0;
  bool passed = false;
};

/// Diagonal unitary: +1 on the first d indices, -1 on the last d.
ComplexMatrix uz_unitary(int d);
UzReport uz_conjugation_report(int d, const Tolerances& tol = {});
bool uz_conjugation_check(int d, const Tolerances& tol = {});

/// Projection onto the algebra invariant under U (x) U^* for diagonal U:
/// keeps <ij|rho|ij> and <ii|rho|jj>.
ComplexMatrix mc_twirl(const ComplexMatrix& m, Index d);
DensityMatrix mc_twirl(const DensityMatrix& rho, Index d);

/// mc_lift(apply_choi(ch, mc_unlift(rho_hat))).
DensityMatrix mcdc_apply(const DioChannel& ch, const DensityMatrix& rho_hat,
                         const Tolerances& tol = {});

}  // namespace cohrank
