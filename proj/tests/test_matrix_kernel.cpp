#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "cohrank/matrix_kernel.hpp"
#include "cohrank/states.hpp"
#include "test_util.hpp"

using namespace cohrank;
using doctest::Approx;

namespace {

ComplexMatrix omega_by_hand(double alpha) {
  ComplexMatrix m(2, 2);
  m << 0.5, alpha / 2, alpha / 2, 0.5;
  return m;
}

}  // namespace

TEST_CASE("dephase") {
  const ComplexMatrix phi2 = max_coherent(2).projector();
  CHECK(max_abs_entry(dephase(phi2) - 0.5 * identity(2)) < 1e-15);

  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag.diagonal() << 0.2, 0.3, 0.5;
  CHECK(dephase(diag) == diag);

  for (double alpha : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(max_abs_entry(dephase(omega_by_hand(alpha)) - 0.5 * identity(2)) == 0.0);
  }

  SUBCASE("idempotent and trace preserving") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = testing::random_density(rng, 5, 3).matrix();
      const ComplexMatrix once = dephase(m);
      CHECK(dephase(once) == once);
      CHECK(std::abs(once.trace() - m.trace()) < 1e-15);
    }
  }
}

TEST_CASE("tensor_power") {
  const ComplexMatrix w = omega_by_hand(0.3);
  CHECK(tensor_power(w, 1) == w);
  CHECK(tensor_power(identity(2), 3) == identity(8));

  const ComplexMatrix w2 = tensor_power(omega_by_hand(0.6), 2);
  CHECK(w2(0, 3).real() == Approx(0.09).epsilon(1e-14));  // <00|w(x)w|11> = alpha^2/4

  SUBCASE("matches the entry formula") {
    std::mt19937_64 rng(3);
    const ComplexMatrix m = testing::random_density(rng, 3, 3).matrix();
    const ComplexMatrix p = tensor_power(m, 3);
    double worst = 0.0;
    for (Index r = 0; r < p.rows(); ++r)
      for (Index c = 0; c < p.cols(); ++c)
        worst = std::max(worst, std::abs(p(r, c) - testing::tensor_power_entry(m, 3, r, c)));
    CHECK(worst < 1e-15);
  }

  SUBCASE("power splits as a Kronecker product") {
    std::mt19937_64 rng(5);
    const ComplexMatrix m = testing::random_density(rng, 2, 2).matrix();
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        CHECK(max_abs_entry(tensor_power(m, a + b) -
                            kron(tensor_power(m, a), tensor_power(m, b))) <= 1e-12);
  }

  CHECK_THROWS_AS(tensor_power(w, 13), DimensionError);
  CHECK_NOTHROW(tensor_power(w, 13, 8192));
  CHECK_THROWS_AS(tensor_power(w, 0), DomainError);
}

TEST_CASE("spectrum") {
  const auto id = spectrum(identity(2));
  REQUIRE(id.size() == 2);
  CHECK(id[0] == Approx(1.0));
  CHECK(id[1] == Approx(1.0));

  for (double alpha : {0.0, 0.25, 0.9}) {
    const auto ev = spectrum(omega_by_hand(alpha));
    CHECK(ev[0] == Approx((1 - alpha) / 2).epsilon(1e-14));
    CHECK(ev[1] == Approx((1 + alpha) / 2).epsilon(1e-14));
  }

  ComplexMatrix non_herm = identity(2);
  non_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(spectrum(non_herm), InvalidStateError);

  SUBCASE("ascending and sums to the trace") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
      ComplexMatrix g(6, 6);
      for (Index c = 0; c < 6; ++c) g.col(c) = testing::gaussian_vector(rng, 6);
      const ComplexMatrix h = g + g.adjoint();
      const auto ev = spectrum(h);
      CHECK(std::is_sorted(ev.begin(), ev.end()));
      CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == Approx(h.trace().real()).epsilon(1e-9));
    }
  }
}

TEST_CASE("partial_transpose") {
  std::mt19937_64 rng(23);
  const ComplexMatrix a = testing::random_density(rng, 2, 2).matrix();
  const ComplexMatrix b = testing::random_density(rng, 3, 3).matrix();
  const ComplexMatrix ab = kron(a, b);

  CHECK(partial_transpose(partial_transpose(ab, 2, 3), 2, 3) == ab);
  const ComplexMatrix pt = partial_transpose(ab, 2, 3);
  CHECK(max_abs_entry(pt - kron(a, b.transpose())) < 1e-15);
  CHECK(min_eigenvalue(pt) > -1e-12);

  // lift of omega: spectrum of the partial transpose is {1/2, 1/2, alpha/2, -alpha/2}
  const double alpha = 0.4;
  const auto ev = spectrum(partial_transpose(mc_lift(omega_by_hand(alpha)), 2, 2));
  CHECK(ev[0] == Approx(-alpha / 2).epsilon(1e-14));
  CHECK(ev[1] == Approx(alpha / 2).epsilon(1e-14));
  CHECK(ev[2] == Approx(0.5).epsilon(1e-14));
  CHECK(ev[3] == Approx(0.5).epsilon(1e-14));

  SUBCASE("preserves trace and Hermiticity") {
    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix m = testing::random_density(rng, 6, 4).matrix();
      const ComplexMatrix p = partial_transpose(m, 3, 2);
      CHECK(std::abs(p.trace() - m.trace()) < 1e-14);
      CHECK(hermiticity_error(p) < 1e-14);
    }
  }

  CHECK_THROWS_AS(partial_transpose(ab, 3, 3), DimensionError);
}

TEST_CASE("trace_norm") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 10; ++t) {
    CHECK(trace_norm(testing::random_density(rng, 4, 2).matrix()) == Approx(1.0).epsilon(1e-9));
  }
  CHECK(trace_norm(ComplexMatrix::Zero(3, 3)) == 0.0);
  for (double alpha : {0.1, 0.5, 1.0}) {
    const ComplexMatrix pt = partial_transpose(mc_lift(omega_by_hand(alpha)), 2, 2);
    CHECK(trace_norm(pt) == Approx(1.0 + alpha).epsilon(1e-13));
  }

  // Non-Hermitian route: the nilpotent |0><1| has a single singular value 1.
  ComplexMatrix e01 = ComplexMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  CHECK(trace_norm(e01) == Approx(1.0));
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::from_matrix(omega_by_hand(0.5)));
  CHECK_THROWS_AS(DensityMatrix::from_matrix(omega_by_hand(1.2)), InvalidStateError);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(2.0 * omega_by_hand(0.5)), InvalidStateError);
  ComplexMatrix skew = omega_by_hand(0.5);
  skew(0, 1) = Complex(0.2, 0.1);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(skew), InvalidStateError);

  const ValidationReport r = validate_density(omega_by_hand(1.0));
  CHECK(r.valid());
  CHECK(r.min_eigenvalue == Approx(0.0).epsilon(1e-15));

  CHECK_THROWS_AS(PureState::from_amplitudes(ComplexVector::Ones(2)), InvalidStateError);
  CHECK_THROWS_AS(PureState::normalized(ComplexVector::Zero(2)), InvalidStateError);
}
