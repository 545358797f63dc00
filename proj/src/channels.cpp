#include "cohrank/channels.hpp"

#include <cmath>
#include <string>

#include "cohrank/states.hpp"

namespace cohrank {

namespace {

void require_input_dim(const ChoiChannel& ch, Index dim) {
  if (dim != ch.input_dim) {
    throw DimensionError("channel expects input dimension " + std::to_string(ch.input_dim) +
                         ", got " + std::to_string(dim));
  }
}

}  // namespace

ChoiChannel choi_of_kraus(const ComplexMatrix& kraus) {
  const Index din = kraus.cols();
  const Index dout = kraus.rows();
  ChoiChannel ch{din, dout, ComplexMatrix::Zero(din * dout, din * dout)};
  for (Index i = 0; i < din; ++i)
    for (Index j = 0; j < din; ++j)
      ch.choi.block(i * dout, j * dout, dout, dout) = kraus.col(i) * kraus.col(j).adjoint();
  return ch;
}

ChoiChannel dephasing_channel(Index d) {
  ChoiChannel ch{d, d, ComplexMatrix::Zero(d * d, d * d)};
  for (Index i = 0; i < d; ++i) ch.choi(i * d + i, i * d + i) = 1.0;
  return ch;
}

bool dio_feasible(const DensityMatrix& rho, int d, const Tolerances& tol) {
  if (d < 2) throw DomainError("dio_feasible: d must be >= 2");
  const ComplexMatrix target = static_cast<double>(d) * dephase(rho.matrix()) - rho.matrix();
  return min_eigenvalue(target, tol) >= -psd_tolerance(target, tol);
}

DioChannel dio_synthesize(const DensityMatrix& rho, int d, const Tolerances& tol) {
  if (d < 2) throw DomainError("dio_synthesize: d must be >= 2");
  DioChannel out;
  out.d_ = dephase(rho.matrix());
  out.z_ = rho.matrix() - out.d_;
  out.a_ = rho.matrix();
  out.b_ = out.d_ - out.z_ / static_cast<double>(d - 1);

  const double min_b = min_eigenvalue(out.b_, tol);
  if (min_b < -psd_tolerance(out.b_, tol)) {
    throw InfeasibleError("phi_" + std::to_string(d) +
                              " -> rho is not achievable by DIO: min eig(B) = " +
                              std::to_string(min_b),
                          static_cast<double>(d));
  }

  const ComplexMatrix phi = max_coherent(d).projector();
  out.ch_.input_dim = d;
  out.ch_.output_dim = rho.dim();
  out.ch_.choi = kron(phi, out.a_) + kron(identity(d) - phi, out.b_);
  out.prov_ = rho.provenance();
  return out;
}

ComplexMatrix apply_choi(const ChoiChannel& ch, const ComplexMatrix& sigma) {
  require_square(sigma, "apply_choi");
  require_input_dim(ch, sigma.rows());
  const Index m = ch.output_dim;
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Index a = 0; a < ch.input_dim; ++a)
    for (Index b = 0; b < ch.input_dim; ++b)
      if (sigma(b, a) != Complex(0.0, 0.0))
        out += sigma(b, a) * ch.choi.block(b * m, a * m, m, m);
  return out;
}

DensityMatrix apply_choi(const ChoiChannel& ch, const DensityMatrix& sigma) {
  return DensityMatrix::trusted(apply_choi(ch, sigma.matrix()));
}

DensityMatrix apply_choi(const DioChannel& ch, const DensityMatrix& sigma) {
  require_input_dim(ch.channel(), sigma.dim());
  ComplexMatrix out = apply_choi(ch.channel(), sigma.matrix());
  const ComplexMatrix phi = max_coherent(static_cast<int>(ch.input_dim())).projector();
  std::optional<Provenance> prov;
  if (trace_distance(sigma.matrix(), phi) <= 1e-10) prov = ch.target_provenance();
  return DensityMatrix::trusted(std::move(out), prov);
}

CptpReport check_cptp(const ChoiChannel& ch, const Tolerances& tol) {
  CptpReport r;
  r.min_choi_eigenvalue = min_eigenvalue(ch.choi, tol);
  r.psd_slack = psd_tolerance(ch.choi, tol);
  const ComplexMatrix reduced = partial_trace(ch.choi, ch.input_dim, ch.output_dim, true);
  r.partial_trace_error = max_abs_entry(reduced - identity(ch.input_dim));
  r.passed = r.min_choi_eigenvalue >= -r.psd_slack && r.partial_trace_error <= tol.trace;
  return r;
}

CovarianceReport check_dephasing_covariance(const ChoiChannel& ch, const Tolerances& tol) {
  CovarianceReport r;
  const Index d = ch.input_dim;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d, d);
      unit(i, j) = 1.0;
      const ComplexMatrix lhs = apply_choi(ch, dephase(unit));
      const ComplexMatrix rhs = dephase(apply_choi(ch, unit));
      r.max_violation = std::max(r.max_violation, trace_norm(lhs - rhs));
      ++r.basis_size;
    }
  }
  r.passed = r.max_violation <= tol.cov;
  return r;
}

double dio_constraint_residual(const DioChannel& ch) {
  const double inv = 1.0 / static_cast<double>(ch.input_dim());
  const ComplexMatrix mix = inv * ch.component_a() + (1.0 - inv) * ch.component_b();
  const ComplexMatrix da = dephase(ch.component_a());
  return std::max(max_abs_entry(mix - da), max_abs_entry(da - dephase(ch.component_b())));
}

ComplexMatrix uz_unitary(int d) {
  if (d < 1) throw DomainError("uz_unitary: d must be >= 1");
  ComplexMatrix u = ComplexMatrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    u(i, i) = 1.0;
    u(d + i, d + i) = -1.0;
  }
  return u;
}

UzReport uz_conjugation_report(int d, const Tolerances& tol) {
  const ComplexMatrix rho = rho_d(d).matrix();
  const ComplexMatrix diag = dephase(rho);
  const ComplexMatrix z = rho - diag;
  const ComplexMatrix u = uz_unitary(d);
  const ComplexMatrix flipped = diag - z;
  UzReport r;
  r.conjugation_residual = max_abs_entry(u * rho * u.adjoint() - flipped);
  r.min_eigenvalue = min_eigenvalue(flipped, tol);
  r.passed = r.conjugation_residual <= 1e-12 && r.min_eigenvalue >= -psd_tolerance(flipped, tol);
  return r;
}

bool uz_conjugation_check(int d, const Tolerances& tol) {
  return uz_conjugation_report(d, tol).passed;
}

ComplexMatrix mc_twirl(const ComplexMatrix& m, Index d) {
  require_square(m, "mc_twirl");
  if (d < 1 || d * d != m.rows()) throw DimensionError("mc_twirl: expected a d*d system");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    const Index a = r / d, b = r % d;
    for (Index c = 0; c < m.cols(); ++c) {
      const Index x = c / d, y = c % d;
      if ((a == b && x == y) || (a == x && b == y)) out(r, c) = m(r, c);
    }
  }
  return out;
}

DensityMatrix mc_twirl(const DensityMatrix& rho, Index d) {
  return DensityMatrix::trusted(mc_twirl(rho.matrix(), d));
}

DensityMatrix mcdc_apply(const DioChannel& ch, const DensityMatrix& rho_hat,
                         const Tolerances& tol) {
  const Index d = ch.input_dim();
  if (rho_hat.dim() != d * d) {
    throw DimensionError("mcdc_apply: expected a " + std::to_string(d) + "x" +
                         std::to_string(d) + " input");
  }
  return mc_lift(apply_choi(ch, mc_unlift(rho_hat, d, tol)));
}

}  // namespace cohrank
