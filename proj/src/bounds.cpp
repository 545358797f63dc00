#include "cohrank/bounds.hpp"

#include <cmath>
#include <vector>

#include "cohrank/states.hpp"

namespace cohrank {

namespace {

constexpr double kCeilGuard = 1e-9;

int guarded_ceil(double x) { return static_cast<int>(std::ceil(x - kCeilGuard)); }

bool provenance_is(const DensityMatrix& rho, Provenance::Family f, bool lifted) {
  const auto& p = rho.provenance();
  return p && p->family == f && p->lifted == lifted;
}

std::optional<WeightedEnsemble> family_witness(const DensityMatrix& rho, FamilyHint hint,
                                               const Tolerances& tol) {
  const auto& p = rho.provenance();
  if (!p || p->lifted) return std::nullopt;
  std::optional<WeightedEnsemble> ens;
  if (hint == FamilyHint::omega_power && p->family == Provenance::Family::omega_power) {
    if (rho.dim() != (Index{1} << p->copies)) return std::nullopt;
    try {
      ens = decompose_omega_power(p->alpha, p->copies);
    } catch (const InfeasibleError&) {
      return std::nullopt;
    }
  } else if (hint == FamilyHint::rho_d && p->family == Provenance::Family::rho_d) {
    if (rho.dim() != 2 * p->d) return std::nullopt;
    ens = decompose_rho_d(p->d);
  } else {
    return std::nullopt;
  }
  if (!verify_ensemble(*ens, rho, tol.amp).feasible) return std::nullopt;
  return ens;
}

WeightedEnsemble diagonal_witness(const DensityMatrix& rho) {
  std::vector<EnsembleMember> members;
  const Index dim = rho.dim();
  double total = 0.0;
  for (Index i = 0; i < dim; ++i) total += std::max(0.0, rho(i, i).real());
  for (Index i = 0; i < dim; ++i) {
    const double w = std::max(0.0, rho(i, i).real()) / total;
    if (w <= 0.0) continue;
    ComplexVector e = ComplexVector::Zero(dim);
    e(i) = 1.0;
    members.push_back({w, PureState::from_amplitudes(std::move(e))});
  }
  return WeightedEnsemble(std::move(members), dim);
}

struct EigenUpper {
  int upper = 0;
  bool pure = false;
};

template <typename RankOf>
EigenUpper eigenvector_upper(const DensityMatrix& rho, const Tolerances& tol, RankOf rank_of) {
  const ComplexMatrix& m = rho.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) throw Error("eigen-solver failed in rank certificate");
  const double cutoff = std::max(psd_tolerance(m, tol), 1e-12);
  EigenUpper out;
  int support = 0;
  for (Index k = 0; k < m.rows(); ++k) {
    if (solver.eigenvalues()(k) <= cutoff) continue;
    ++support;
    out.upper = std::max(out.upper, rank_of(ComplexVector(solver.eigenvectors().col(k))));
  }
  out.pure = support == 1;
  return out;
}

void check_order(const RankCertificate& c) {
  if (c.upper && *c.upper < c.lower) {
    throw Error("rank certificate inconsistent: lower " + std::to_string(c.lower) +
                " exceeds upper " + std::to_string(*c.upper));
  }
}

}  // namespace

std::string to_string(LowerMethod m) {
  switch (m) {
    case LowerMethod::l1: return "l1";
    case LowerMethod::negativity: return "negativity";
    case LowerMethod::analytic_family: return "analytic-family";
    case LowerMethod::nondiagonality: return "nondiagonality";
  }
  return "unknown";
}

std::string to_string(UpperMethod m) {
  switch (m) {
    case UpperMethod::ensemble_witness: return "ensemble-witness";
    case UpperMethod::eigenvector_ensemble: return "eigenvector-ensemble";
    case UpperMethod::pure_rank: return "pure-rank";
  }
  return "unknown";
}

double l1_norm(const ComplexMatrix& m) {
  require_square(m, "l1_norm");
  double s = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

double l1_norm(const DensityMatrix& rho) { return l1_norm(rho.matrix()); }

int l1_rank_lower_bound(const ComplexMatrix& m) { return guarded_ceil(l1_norm(m) + 1.0); }

int l1_rank_lower_bound(const DensityMatrix& rho) { return l1_rank_lower_bound(rho.matrix()); }

double negativity(const DensityMatrix& rho_hat, Index dimA, Index dimB) {
  return 0.5 * (trace_norm(partial_transpose(rho_hat.matrix(), dimA, dimB)) - 1.0);
}

int negativity_rank_lower_bound(const DensityMatrix& rho_hat, Index dimA, Index dimB) {
  return guarded_ceil(2.0 * negativity(rho_hat, dimA, dimB) + 1.0);
}

double delta_robustness(const DensityMatrix& rho, const Tolerances& tol) {
  const ComplexMatrix& m = rho.matrix();
  std::vector<Index> support;
  for (Index i = 0; i < m.rows(); ++i)
    if (m(i, i).real() > tol.diag) support.push_back(i);
  if (support.empty()) throw InvalidStateError("delta_robustness: state has empty diagonal");
  const auto s = static_cast<Index>(support.size());
  ComplexMatrix scaled(s, s);
  for (Index a = 0; a < s; ++a) {
    const double da = std::sqrt(m(support[a], support[a]).real());
    for (Index b = 0; b < s; ++b) {
      const double db = std::sqrt(m(support[b], support[b]).real());
      scaled(a, b) = m(support[a], support[b]) / (da * db);
    }
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (scaled + scaled.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(s - 1);
}

int dilution_dimension(const DensityMatrix& rho, const Tolerances& tol) {
  return std::max(1, guarded_ceil(delta_robustness(rho, tol)));
}

RankCertificate rank_certificate(const DensityMatrix& rho, std::optional<FamilyHint> hint,
                                 const Tolerances& tol) {
  RankCertificate c;
  c.lower = l1_rank_lower_bound(rho);
  c.lower_method = LowerMethod::l1;

  const bool nondiagonal = !is_diagonal(rho.matrix(), tol.offdiag);
  if (nondiagonal && c.lower < 2) {
    c.lower = 2;
    c.lower_method = LowerMethod::nondiagonality;
  }
  if (provenance_is(rho, Provenance::Family::rho_d, false) &&
      rho.dim() == 2 * rho.provenance()->d) {
    // Every vector in the span of the Fourier family has rank >= d+1.
    const int floor = rho.provenance()->d + 1;
    if (floor > c.lower) {
      c.lower = floor;
      c.lower_method = LowerMethod::analytic_family;
    }
  }

  if (!nondiagonal) {
    c.witness = diagonal_witness(rho);
    c.upper = 1;
    c.upper_method = UpperMethod::ensemble_witness;
    check_order(c);
    return c;
  }

  if (hint) {
    if (auto ens = family_witness(rho, *hint, tol)) {
      c.upper = verify_ensemble(*ens, rho, tol.amp).max_member_rank;
      c.upper_method = UpperMethod::ensemble_witness;
      c.witness = std::move(ens);
      check_order(c);
      return c;
    }
  }

  const EigenUpper e = eigenvector_upper(
      rho, tol, [&](const ComplexVector& v) { return pure_coherence_rank(v, tol.amp); });
  c.upper = e.upper;
  c.upper_method = e.pure ? UpperMethod::pure_rank : UpperMethod::eigenvector_ensemble;
  check_order(c);
  return c;
}

RankCertificate schmidt_certificate(const DensityMatrix& rho_hat, Index dimA, Index dimB,
                                    std::optional<FamilyHint> hint, const Tolerances& tol) {
  require_square(rho_hat.matrix(), "schmidt_certificate");
  if (dimA * dimB != rho_hat.dim()) throw DimensionError("schmidt_certificate: dims mismatch");
  const int neg = negativity_rank_lower_bound(rho_hat, dimA, dimB);

  if (dimA == dimB && mc_off_block_mass(rho_hat.matrix(), dimA) <= tol.mc) {
    RankCertificate c = rank_certificate(mc_unlift(rho_hat, dimA, tol), hint, tol);
    if (neg > c.lower) {
      c.lower = neg;
      c.lower_method = LowerMethod::negativity;
    }
    if (c.witness) c.witness = mc_lift(*c.witness);
    check_order(c);
    return c;
  }

  RankCertificate c;
  c.lower = neg;
  c.lower_method = LowerMethod::negativity;
  const EigenUpper e = eigenvector_upper(rho_hat, tol, [&](const ComplexVector& v) {
    return pure_schmidt_rank(PureState::normalized(v), dimA, dimB, tol.amp);
  });
  c.upper = e.upper;
  c.upper_method = e.pure ? UpperMethod::pure_rank : UpperMethod::eigenvector_ensemble;
  check_order(c);
  return c;
}

std::pair<double, double> regularized_cost_bounds(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("regularized_cost_bounds: alpha must lie in (0, 1], got " +
                      std::to_string(alpha));
  }
  const double lower = std::log2(1.0 + alpha);
  // The guard keeps alpha = 2^{1/m} - 1 from flooring to m - 1.
  const double copies = std::floor(1.0 / lower + kCeilGuard);
  return {lower, 1.0 / copies};
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entanglement_cost_omega(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("entanglement_cost_omega: alpha must lie in [0, 1]");
  }
  return binary_entropy(0.5 * (1.0 - std::sqrt(1.0 - alpha * alpha)));
}

CostReport cost_report(double alpha, int n, std::size_t cap, const Tolerances& tol) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("cost_report: alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (n < 1) throw DomainError("cost_report: copies must be >= 1");

  CostReport r;
  r.alpha = alpha;
  r.copies = n;
  r.asymptotic_ec = entanglement_cost_omega(alpha);

  const RankCertificate cert =
      rank_certificate(omega_power(alpha, n, cap), FamilyHint::omega_power, tol);
  r.zero_error_lower = std::log2(static_cast<double>(cert.lower)) / n;
  r.zero_error_upper = std::log2(static_cast<double>(*cert.upper)) / n;
  r.zero_error_certified = cert.exact();
  if (cert.exact()) r.certified_rank = cert.lower;

  if (alpha > 0.0) {
    std::tie(r.regularized_lower, r.regularized_upper) = regularized_cost_bounds(alpha);
  }

  constexpr double slack = 1e-9;
  if (!(*r.asymptotic_ec <= r.regularized_lower + slack &&
        r.regularized_lower <= r.regularized_upper + slack &&
        r.regularized_upper <= r.zero_error_upper + slack)) {
    throw Error("cost ordering violated at alpha = " + std::to_string(alpha));
  }
  return r;
}

}  // namespace cohrank
