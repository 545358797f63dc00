#pragma once

// Named state families and the maximally correlated lift.
//
// Index convention: 0-based; an n-bit string b_0 b_1 ... b_{n-1} maps to the
// basis index with b_0 as the most significant bit, matching tensor_power.

#include <cstdint>
#include <string_view>

#include "cohrank/matrix_kernel.hpp"

namespace cohrank {

/// (|0> + ... + |m-1>) / sqrt(m).
PureState max_coherent(int m);

/// (1 - alpha)/2 * I + alpha * |phi_2><phi_2|, for alpha in [0, 1].
DensityMatrix omega(double alpha);

/// omega(alpha)^{(x) n}, tagged with its construction.
DensityMatrix omega_power(double alpha, int n, std::size_t cap = kDefaultDimensionCap);

/// State in C^{2d}: |k>/sqrt(d+1) plus the d-point Fourier transform of
/// sqrt(d)|d+k>, with phase e^{-i j k 2pi/d} on |d+j>.
PureState fourier_state(int d, int k);

/// sum_k u_{j,k} |fourier_state(d,k)>, u_{j,k} = e^{+i j k 2pi/d}/sqrt(d).
PureState fourier_dual_state(int d, int j);

/// Uniform mixture of fourier_state(d, k) over k; dimension 2d.
DensityMatrix rho_d(int d, std::size_t cap = kDefaultDimensionCap);

/// (|i> + |j>)/sqrt(2) on n qubits; i and j are basis indices below 2^n.
PureState pair_state(std::uint64_t i, std::uint64_t j, int n);
/// Same, from bitstrings such as "0110".
PureState pair_state(std::string_view i, std::string_view j);

/// Number of amplitudes with modulus strictly above tau.
int pure_coherence_rank(const PureState& psi, double tau = 1e-8);
int pure_coherence_rank(const ComplexVector& amps, double tau = 1e-8);

/// Number of Schmidt coefficients above tau for a dimA x dimB pure state.
int pure_schmidt_rank(const PureState& psi, Index dimA, Index dimB, double tau = 1e-8);

/// Embeds |i> -> |ii>: <ii|lift|jj> = <i|rho|j>, zero elsewhere.
DensityMatrix mc_lift(const DensityMatrix& rho);
ComplexMatrix mc_lift(const ComplexMatrix& m);
PureState mc_lift(const PureState& psi);

/// Inverse of mc_lift on a d x d bipartite state. Throws
/// NotMaximallyCorrelatedError when any entry outside the |ii><jj| block
/// exceeds tol.mc in modulus.
DensityMatrix mc_unlift(const DensityMatrix& rho_hat, Index d, const Tolerances& tol = {});

/// Largest modulus among entries outside the |ii><jj| block.
double mc_off_block_mass(const ComplexMatrix& m, Index d);

}  // namespace cohrank
