#include "cohrank/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cohrank {

namespace {

void require_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

void require_index(int d, int k, const char* op) {
  if (d < 1) throw DomainError(std::string(op) + ": d must be >= 1");
  if (k < 0 || k >= d) {
    throw DomainError(std::string(op) + ": index " + std::to_string(k) +
                      " outside [0, " + std::to_string(d) + ")");
  }
}

Complex root_of_unity(double sign, int j, int k, int d) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) *
                       static_cast<double>(k) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

std::uint64_t parse_bits(std::string_view bits) {
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bitstring may contain only 0 and 1");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

PureState max_coherent(int m) {
  if (m < 1) throw DomainError("max_coherent: m must be >= 1");
  return PureState::normalized(ComplexVector::Ones(m));
}

DensityMatrix omega(double alpha) {
  require_alpha(alpha);
  ComplexMatrix m(2, 2);
  m << 0.5, alpha / 2.0, alpha / 2.0, 0.5;
  return DensityMatrix::trusted(std::move(m),
                                Provenance{Provenance::Family::omega_power, alpha, 1, 0, false});
}

DensityMatrix omega_power(double alpha, int n, std::size_t cap) {
  require_alpha(alpha);
  ComplexMatrix m = tensor_power(omega(alpha).matrix(), n, cap);
  return DensityMatrix::trusted(std::move(m),
                                Provenance{Provenance::Family::omega_power, alpha, n, 0, false});
}

PureState fourier_state(int d, int k) {
  require_index(d, k, "fourier_state");
  const double norm = 1.0 / std::sqrt(static_cast<double>(d + 1));
  ComplexVector a = ComplexVector::Zero(2 * d);
  a(k) = norm;
  for (int j = 0; j < d; ++j) a(d + j) = norm * root_of_unity(-1.0, j, k, d);
  return PureState::normalized(std::move(a));
}

PureState fourier_dual_state(int d, int j) {
  require_index(d, j, "fourier_dual_state");
  const double norm = 1.0 / std::sqrt(static_cast<double>(d) * (d + 1));
  ComplexVector a = ComplexVector::Zero(2 * d);
  for (int k = 0; k < d; ++k) a(k) = norm * root_of_unity(+1.0, j, k, d);
  a(d + j) = norm * static_cast<double>(d);
  return PureState::normalized(std::move(a));
}

DensityMatrix rho_d(int d, std::size_t cap) {
  if (d < 1) throw DomainError("rho_d: d must be >= 1");
  if (static_cast<std::size_t>(2 * d) > cap) {
    throw DimensionError("rho_d: dimension " + std::to_string(2 * d) + " exceeds cap");
  }
  ComplexMatrix m = ComplexMatrix::Zero(2 * d, 2 * d);
  for (int k = 0; k < d; ++k) {
    const ComplexVector v = fourier_state(d, k).amplitudes();
    m.noalias() += v * v.adjoint();
  }
  m /= static_cast<double>(d);
  return DensityMatrix::trusted(std::move(m),
                                Provenance{Provenance::Family::rho_d, 0.0, 1, d, false});
}

PureState pair_state(std::uint64_t i, std::uint64_t j, int n) {
  if (n < 1 || n > 30) throw DomainError("pair_state: n must lie in [1, 30]");
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (i >= dim || j >= dim) throw DomainError("pair_state: index exceeds 2^n");
  if (i == j) throw DomainError("pair_state: i and j must differ");
  ComplexVector a = ComplexVector::Zero(static_cast<Index>(dim));
  a(static_cast<Index>(i)) = 1.0;
  a(static_cast<Index>(j)) = 1.0;
  return PureState::normalized(std::move(a));
}

PureState pair_state(std::string_view i, std::string_view j) {
  if (i.size() != j.size() || i.empty()) {
    throw DomainError("pair_state: bitstrings must be non-empty and of equal length");
  }
  return pair_state(parse_bits(i), parse_bits(j), static_cast<int>(i.size()));
}

int pure_coherence_rank(const ComplexVector& amps, double tau) {
  int r = 0;
  for (Index i = 0; i < amps.size(); ++i) r += std::abs(amps(i)) > tau ? 1 : 0;
  return r;
}

int pure_coherence_rank(const PureState& psi, double tau) {
  return pure_coherence_rank(psi.amplitudes(), tau);
}

int pure_schmidt_rank(const PureState& psi, Index dimA, Index dimB, double tau) {
  if (dimA * dimB != psi.dim()) throw DimensionError("pure_schmidt_rank: dims mismatch");
  ComplexMatrix c(dimA, dimB);
  for (Index a = 0; a < dimA; ++a)
    for (Index b = 0; b < dimB; ++b) c(a, b) = psi[a * dimB + b];
  Eigen::JacobiSVD<ComplexMatrix> svd(c);
  const Eigen::VectorXd s = svd.singularValues();
  int r = 0;
  for (Index i = 0; i < s.size(); ++i) r += s(i) > tau ? 1 : 0;
  return r;
}

ComplexMatrix mc_lift(const ComplexMatrix& m) {
  require_square(m, "mc_lift");
  const Index d = m.rows();
  ComplexMatrix out = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i * d + i, j * d + j) = m(i, j);
  return out;
}

DensityMatrix mc_lift(const DensityMatrix& rho) {
  std::optional<Provenance> prov = rho.provenance();
  if (prov) prov->lifted = true;
  return DensityMatrix::trusted(mc_lift(rho.matrix()), prov);
}

PureState mc_lift(const PureState& psi) {
  const Index d = psi.dim();
  ComplexVector a = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) a(i * d + i) = psi[i];
  return PureState::from_amplitudes(std::move(a), Tolerances{.norm = 1e-6});
}

double mc_off_block_mass(const ComplexMatrix& m, Index d) {
  require_square(m, "mc_off_block_mass");
  if (d * d != m.rows()) throw DimensionError("MC state must have dimension d*d");
  double worst = 0.0;
  for (Index r = 0; r < m.rows(); ++r) {
    const bool r_diag = r / d == r % d;
    for (Index c = 0; c < m.cols(); ++c) {
      if (r_diag && c / d == c % d) continue;
      worst = std::max(worst, std::abs(m(r, c)));
    }
  }
  return worst;
}

DensityMatrix mc_unlift(const DensityMatrix& rho_hat, Index d, const Tolerances& tol) {
  const ComplexMatrix& m = rho_hat.matrix();
  const double off = mc_off_block_mass(m, d);
  if (off > tol.mc) {
    throw NotMaximallyCorrelatedError("state has modulus " + std::to_string(off) +
                                      " outside the maximally correlated block");
  }
  ComplexMatrix out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i, j) = m(i * d + i, j * d + j);
  std::optional<Provenance> prov = rho_hat.provenance();
  if (prov) prov->lifted = false;
  return DensityMatrix::trusted(std::move(out), prov);
}

}  // namespace cohrank
