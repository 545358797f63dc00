#include <doctest.h>

#include <cmath>
#include <random>

#include "cohrank/bounds.hpp"
#include "cohrank/channels.hpp"
#include "cohrank/states.hpp"
#include "test_util.hpp"

using namespace cohrank;
using doctest::Approx;

namespace {

DensityMatrix diagonal_state() {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 0.5, 0.3, 0.2;
  return DensityMatrix::from_matrix(m);
}

// Lambda(sigma) = Tr_in[(sigma^T (x) I) Omega] evaluated entry by entry.
ComplexMatrix apply_by_hand(const ChoiChannel& ch, const ComplexMatrix& sigma) {
  const Index din = ch.input_dim, dout = ch.output_dim;
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  for (Index r = 0; r < dout; ++r)
    for (Index c = 0; c < dout; ++c)
      for (Index a = 0; a < din; ++a)
        for (Index b = 0; b < din; ++b) out(r, c) += sigma(b, a) * ch.choi(a * dout + r, b * dout + c);
  return out;
}

}  // namespace

TEST_CASE("dio_feasible") {
  for (int d = 1; d <= 10; ++d) CHECK(dio_feasible(rho_d(d), 2));
  CHECK(!dio_feasible(max_coherent(4).density(), 3));
  CHECK(dio_feasible(max_coherent(4).density(), 4));
  CHECK(dio_feasible(diagonal_state(), 2));
  CHECK_THROWS_AS(dio_feasible(diagonal_state(), 1), DomainError);

  SUBCASE("pure-state monotonicity") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 100; ++t) {
      const PureState tau = testing::random_sparse_pure(rng, 2 + t % 9);
      const int r = pure_coherence_rank(tau);
      CAPTURE(r);
      for (int d = std::max(2, r); d <= r + 2; ++d) CHECK(dio_feasible(tau.density(), d));
      if (r - 1 >= 2) CHECK(!dio_feasible(tau.density(), r - 1));
    }
  }
}

TEST_CASE("dio_synthesize") {
  SUBCASE("rho_3 with d = 2") {
    const DensityMatrix r3 = rho_d(3);
    const DioChannel ch = dio_synthesize(r3, 2);
    const ComplexMatrix expect_b = 2.0 * dephase(r3.matrix()) - r3.matrix();
    CHECK(max_abs_entry(ch.component_b() - expect_b) < 1e-14);
    CHECK(max_abs_entry(ch.component_a() - r3.matrix()) < 1e-15);
    CHECK(check_cptp(ch.channel()).passed);
    CHECK(dio_constraint_residual(ch) <= 1e-10);

    // blocks of Omega: Delta(rho) on the diagonal, (A - B)/d off it
    const ComplexMatrix off = (ch.component_a() - ch.component_b()) / 2.0;
    ComplexMatrix omega_hand(12, 12);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        omega_hand.block(6 * a, 6 * b, 6, 6) = a == b ? dephase(r3.matrix()) : off;
    CHECK(max_abs_entry(ch.choi() - omega_hand) < 1e-12);
  }

  SUBCASE("diagonal target") {
    const DioChannel ch = dio_synthesize(diagonal_state(), 2);
    CHECK(max_abs_entry(ch.component_a() - diagonal_state().matrix()) == 0.0);
    CHECK(max_abs_entry(ch.component_b() - diagonal_state().matrix()) < 1e-16);
    CHECK(max_abs_entry(ch.component_z()) == 0.0);
  }

  SUBCASE("omega(0.5)") {
    const DioChannel ch = dio_synthesize(omega(0.5), 2);
    const ComplexMatrix& b = ch.component_b();
    CHECK(b(0, 0).real() == Approx(0.5));
    CHECK(b(1, 1).real() == Approx(0.5));
    CHECK(b(0, 1).real() == Approx(-0.25));
    CHECK(min_eigenvalue(b) >= 0.0);
  }

  CHECK_THROWS_AS(dio_synthesize(max_coherent(4).density(), 3), InfeasibleError);
}

TEST_CASE("apply_choi") {
  std::mt19937_64 rng(31);
  for (int d : {2, 3, 4}) {
    const DensityMatrix target = rho_d(3);
    if (!dio_feasible(target, d)) continue;
    const DioChannel ch = dio_synthesize(target, d);
    const DensityMatrix phi = max_coherent(d).density();
    const DensityMatrix out = apply_choi(ch, phi);
    CHECK(trace_distance(out.matrix(), target.matrix()) <= 1e-10);
    REQUIRE(out.provenance());
    CHECK(out.provenance()->family == Provenance::Family::rho_d);

    // incoherent inputs land on Delta(rho)
    for (int i = 0; i < d; ++i) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, i) = 1.0;
      const ComplexMatrix o = apply_choi(ch.channel(), e);
      const ComplexMatrix mix = ch.component_a() / double(d) + (1.0 - 1.0 / d) * ch.component_b();
      CHECK(max_abs_entry(o - mix) < 1e-14);
      CHECK(max_abs_entry(o - dephase(target.matrix())) < 1e-14);
    }

    for (int t = 0; t < 10; ++t) {
      const ComplexMatrix s = testing::random_density(rng, d, 1 + t % d).matrix();
      const ComplexMatrix o = apply_choi(ch.channel(), s);
      CHECK(std::abs(o.trace() - 1.0) < 1e-12);
      CHECK(max_abs_entry(o - apply_by_hand(ch.channel(), s)) < 1e-14);
    }
  }
  const DioChannel ch = dio_synthesize(rho_d(2), 2);
  CHECK_THROWS_AS(apply_choi(ch, max_coherent(3).density()), DimensionError);
}

TEST_CASE("CPTP and covariance checks") {
  const DioChannel ch = dio_synthesize(rho_d(4), 2);
  const CptpReport cp = check_cptp(ch.channel());
  CHECK(cp.passed);
  CHECK(cp.partial_trace_error <= 1e-9);

  const CovarianceReport cov = check_dephasing_covariance(ch);
  CHECK(cov.passed);
  CHECK(cov.max_violation <= 1e-9);
  CHECK(cov.basis_size == 4);

  const CovarianceReport deph = check_dephasing_covariance(dephasing_channel(3));
  CHECK(deph.passed);
  CHECK(deph.basis_size == 9);
  CHECK(check_cptp(dephasing_channel(3)).passed);

  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const ChoiChannel had = choi_of_kraus(h);
  CHECK(check_cptp(had).passed);
  const CovarianceReport bad = check_dephasing_covariance(had);
  CHECK(!bad.passed);
  // on E_00: Lambda(E_00) = |+><+| has off-diagonal 1/2 that dephasing removes
  CHECK(bad.max_violation >= 1.0 - 1e-12);

  // a non-trace-preserving map fails the CPTP check
  const ChoiChannel half = choi_of_kraus(0.5 * identity(2));
  CHECK(!check_cptp(half).passed);
}

TEST_CASE("U_Z conjugation") {
  for (int d = 1; d <= 16; ++d) {
    const UzReport r = uz_conjugation_report(d);
    CHECK(r.passed);
    CHECK(r.conjugation_residual <= 1e-12);
    CHECK(r.min_eigenvalue >= -1e-10);
    const ComplexMatrix u = uz_unitary(d);
    CHECK(max_abs_entry(u * u - identity(2 * d)) == 0.0);
  }
  // direct oracle for d = 4
  const DensityMatrix r4 = rho_d(4);
  const ComplexMatrix u = uz_unitary(4);
  const ComplexMatrix dz = 2.0 * dephase(r4.matrix()) - r4.matrix();
  CHECK(max_abs_entry(u * r4.matrix() * u.adjoint() - dz) <= 1e-12);
  CHECK(min_eigenvalue(dz) >= -1e-10);
  CHECK(uz_conjugation_check(4));
}

TEST_CASE("mc_twirl") {
  ComplexMatrix e = ComplexMatrix::Zero(4, 4);
  e(1, 0) = 1.0;  // |01><00|
  CHECK(max_abs_entry(mc_twirl(e, 2)) == 0.0);
  ComplexMatrix keep = ComplexMatrix::Zero(4, 4);
  keep(0, 3) = 1.0;  // |00><11|
  keep(1, 1) = 1.0;  // |01><01|
  CHECK(mc_twirl(keep, 2) == keep);

  std::mt19937_64 rng(50);
  for (int t = 0; t < 50; ++t) {
    const Index d = 2 + t % 3;
    const DensityMatrix s = testing::random_density(rng, d * d, 1 + t % 4);
    const ComplexMatrix once = mc_twirl(s.matrix(), d);
    CHECK(max_abs_entry(mc_twirl(once, d) - once) == 0.0);
    CHECK(std::abs(once.trace() - 1.0) < 1e-12);
    CHECK(min_eigenvalue(once) >= -1e-12);
    if (t < 15) CHECK(max_abs_entry(once - testing::discrete_twirl(s.matrix(), d)) < 1e-12);

    const DensityMatrix lifted = mc_lift(testing::random_density(rng, d, 2));
    CHECK(max_abs_entry(mc_twirl(lifted.matrix(), d) - lifted.matrix()) == 0.0);
  }
  CHECK_THROWS_AS(mc_twirl(ComplexMatrix::Zero(5, 5), 2), DimensionError);
}

TEST_CASE("mcdc_apply") {
  const DensityMatrix phi2 = mc_lift(max_coherent(2).density());
  CHECK(pure_schmidt_rank(mc_lift(max_coherent(2)), 2, 2) == 2);

  for (int d = 2; d <= 12; ++d) {
    CAPTURE(d);
    const DensityMatrix target = rho_d(d);
    const DioChannel ch = dio_synthesize(target, 2);
    const DensityMatrix out = mcdc_apply(ch, phi2);
    CHECK(trace_distance(out.matrix(), mc_lift(target.matrix())) <= 1e-10);
    const Index m = 2 * d;
    const RankCertificate c = schmidt_certificate(out, m, m, FamilyHint::rho_d);
    CHECK(c.lower == d + 1);
    CHECK(c.upper == d + 1);
    CHECK(negativity_rank_lower_bound(out, m, m) == l1_rank_lower_bound(target));
  }

  ComplexMatrix incoh = ComplexMatrix::Zero(2, 2);
  incoh.diagonal() << 0.25, 0.75;
  const DensityMatrix sigma = DensityMatrix::from_matrix(incoh);
  const DioChannel same = dio_synthesize(sigma, 2);
  const DensityMatrix out = mcdc_apply(same, mc_lift(sigma));
  CHECK(max_abs_entry(out.matrix() - mc_lift(sigma).matrix()) < 1e-15);

  ComplexMatrix e01 = ComplexMatrix::Zero(4, 4);
  e01(1, 1) = 1.0;
  CHECK_THROWS_AS(mcdc_apply(same, DensityMatrix::trusted(e01)), NotMaximallyCorrelatedError);
}
