#include "cohrank/decompositions.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cohrank/states.hpp"

namespace cohrank {

WeightedEnsemble::WeightedEnsemble(std::vector<EnsembleMember> members, Index target_dim)
    : members_(std::move(members)), target_dim_(target_dim) {
  if (target_dim_ < 1) throw DimensionError("ensemble target dimension must be >= 1");
  for (const auto& m : members_) {
    if (m.weight < -1e-12) throw DomainError("ensemble weight is negative");
    if (m.state.dim() != target_dim_) {
      throw DimensionError("ensemble member dimension differs from target dimension");
    }
  }
  if (std::abs(weight_sum() - 1.0) > 1e-9) {
    throw DomainError("ensemble weights sum to " + std::to_string(weight_sum()));
  }
}

double WeightedEnsemble::weight_sum() const {
  double s = 0.0;
  for (const auto& m : members_) s += m.weight;
  return s;
}

double omega_power_boundary(int n) {
  if (n < 1) throw DomainError("copies must be >= 1");
  return std::exp2(1.0 / n) - 1.0;
}

bool omega_power_feasible(double alpha, int n) {
  if (n < 1) throw DomainError("copies must be >= 1");
  // Tolerance keeps the boundary alpha = 2^{1/n} - 1 inside the region.
  return (2.0 - std::pow(1.0 + alpha, n)) * std::exp2(-n) >= -1e-12;
}

WeightedEnsemble decompose_omega_power(double alpha, int n, std::size_t cap) {
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  if (n < 1) throw DomainError("copies must be >= 1");
  const double boundary = omega_power_boundary(n);
  const double scale = std::exp2(-n);
  const double residual = (2.0 - std::pow(1.0 + alpha, n)) * scale;
  if (!omega_power_feasible(alpha, n)) {
    throw InfeasibleError("omega-power ensemble infeasible: (1+alpha)^n > 2; boundary alpha = " +
                              std::to_string(boundary),
                          boundary);
  }
  if (alpha > 1.0) throw DomainError("alpha must be <= 1");
  if (std::exp2(n) > static_cast<double>(cap)) {
    throw DimensionError("omega-power dimension 2^" + std::to_string(n) + " exceeds cap");
  }

  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<EnsembleMember> members;
  // alpha^h for every Hamming distance, so weights do not depend on pow() per pair.
  std::vector<double> alpha_pow(n + 1, 1.0);
  for (int h = 1; h <= n; ++h) alpha_pow[h] = alpha_pow[h - 1] * alpha;

  if (alpha > 0.0) {
    members.reserve(static_cast<std::size_t>(dim * (dim - 1) / 2 + dim));
    for (std::uint64_t i = 0; i < dim; ++i) {
      for (std::uint64_t j = i + 1; j < dim; ++j) {
        const double w = 2.0 * alpha_pow[std::popcount(i ^ j)] * scale;
        members.push_back({w, pair_state(i, j, n)});
      }
    }
  }
  if (residual > 0.0) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      ComplexVector e = ComplexVector::Zero(static_cast<Index>(dim));
      e(static_cast<Index>(i)) = 1.0;
      members.push_back({residual, PureState::from_amplitudes(std::move(e))});
    }
  }
  return WeightedEnsemble(std::move(members), static_cast<Index>(dim));
}

WeightedEnsemble decompose_rho_d(int d) {
  if (d < 1) throw DomainError("rho_d: d must be >= 1");
  std::vector<EnsembleMember> members;
  members.reserve(d);
  for (int j = 0; j < d; ++j) members.push_back({1.0 / d, fourier_dual_state(d, j)});
  return WeightedEnsemble(std::move(members), 2 * d);
}

ComplexMatrix reconstruct(const WeightedEnsemble& ens) {
  const Index dim = ens.target_dim();
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  std::vector<Index> support;
  support.reserve(dim);
  for (const auto& m : ens.members()) {
    const ComplexVector& a = m.state.amplitudes();
    support.clear();
    for (Index i = 0; i < dim; ++i)
      if (a(i) != Complex(0.0, 0.0)) support.push_back(i);
    // Sparse rank-one update: the large ensembles are made of 1- and 2-sparse states.
    for (Index r : support) {
      const Complex wr = m.weight * a(r);
      for (Index c : support) out(r, c) += wr * std::conj(a(c));
    }
  }
  return out;
}

EnsembleReport verify_ensemble(const WeightedEnsemble& ens, const DensityMatrix& target,
                               double tau_amp, double tol_recon) {
  if (ens.target_dim() != target.dim()) {
    throw DimensionError("verify_ensemble: ensemble and target dimensions differ");
  }
  EnsembleReport r;
  r.weight_sum = ens.weight_sum();
  r.reconstruction_trace_distance = trace_distance(reconstruct(ens), target.matrix());
  for (const auto& m : ens.members()) {
    r.max_member_rank = std::max(r.max_member_rank, pure_coherence_rank(m.state, tau_amp));
  }
  r.feasible = r.reconstruction_trace_distance <= tol_recon &&
               std::abs(r.weight_sum - 1.0) <= 1e-9;
  return r;
}

WeightedEnsemble mc_lift(const WeightedEnsemble& ens) {
  std::vector<EnsembleMember> lifted;
  lifted.reserve(ens.size());
  for (const auto& m : ens.members()) lifted.push_back({m.weight, mc_lift(m.state)});
  return WeightedEnsemble(std::move(lifted), ens.target_dim() * ens.target_dim());
}

}  // namespace cohrank
