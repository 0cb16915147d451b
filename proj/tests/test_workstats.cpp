#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qwork/coherence.hpp"
#include "qwork/errors.hpp"
#include "qwork/sampling.hpp"
#include "qwork/workstats.hpp"

using namespace qwork;

namespace {

constexpr double kPi = std::numbers::pi;

DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return DensityMatrix::pure(v);
}

WorkDistribution three_points() {
  JointWorkTable t;
  t.P.resize(2, 2);
  t.P << 0.4, 0.1, 0.2, 0.3;
  t.e_init = {1.0, -1.0};
  t.e_final = {1.0, -1.0};
  return work_distribution(t);
}

}  // namespace

TEST_CASE("tpm_joint examples") {
  const auto z = spectral_decompose(pauli_z());
  const auto id = UnitaryPropagator::identity(2);

  SUBCASE("identity evolution puts the populations on the diagonal") {
    const auto g = gibbs_state(z, 0.5).state;
    const auto t = tpm_joint(g, z, z, id);
    CHECK(t.P(0, 0) == doctest::Approx(g.matrix()(0, 0).real()));
    CHECK(t.P(1, 1) == doctest::Approx(g.matrix()(1, 1).real()));
    CHECK(t.P(0, 1) == 0.0);
    CHECK(t.P(1, 0) == 0.0);
  }
  SUBCASE("plus state with identity evolution") {
    const auto t = tpm_joint(plus_state(), z, z, id);
    CHECK(t.P(0, 0) == doctest::Approx(0.5));
    CHECK(t.P(1, 1) == doctest::Approx(0.5));
    CHECK(std::abs(t.P(0, 1)) < 1e-16);
    CHECK(std::abs(t.P(1, 0)) < 1e-16);
  }
  SUBCASE("Gibbs state under the real rotation matches the brute-force table") {
    const auto g = gibbs_state(z, 0.2).state;
    const auto u = real_rotation(kPi / 5);
    const auto t = tpm_joint(g, z, z, u);
    const auto ref = oracle::diagonal_tables(oracle::from_eigen(g.matrix()), oracle::from_eigen(u.matrix()));
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) CHECK(t.P(m, n) == doctest::Approx(ref.tpm[m][n]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(tpm_joint(DensityMatrix::maximally_mixed(3), z, z, id), InvalidArgument);
}

TEST_CASE("mh_joint examples") {
  const auto z = spectral_decompose(pauli_z());

  SUBCASE("incoherent state reproduces TPM") {
    const auto g = gibbs_state(z, 0.3).state;
    const auto u = qubit_unitary(0.7, 0.2, -0.4, 0.1);
    CHECK(max_abs(mh_joint(g, z, z, u).P - tpm_joint(g, z, z, u).P) <= 1e-12);
  }
  SUBCASE("plus state at tau = 3pi/4 has a negative entry") {
    const auto t = mh_joint(plus_state(), z, z, real_rotation(3 * kPi / 4));
    CHECK(t.min_entry() < 0.0);
    const auto ref = oracle::diagonal_tables(oracle::from_eigen(plus_state().matrix()),
                                             oracle::from_eigen(real_rotation(3 * kPi / 4).matrix()));
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) CHECK(t.P(m, n) == doctest::Approx(ref.mh[m][n]).epsilon(1e-14));
  }
  SUBCASE("entries stay within [-1/8, 1] over 1e5 random instances") {
    SampleStream stream(8);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const int d = 2 + i % 3;
      const auto h0 = spectral_decompose(stream.gue(d));
      const auto h1 = spectral_decompose(stream.gue(d));
      const auto t = mh_joint(stream.density_matrix(d, 1), h0, h1, stream.haar_unitary(d));
      lo = std::min(lo, t.min_entry());
      hi = std::max(hi, t.P.maxCoeff());
    }
    CHECK(lo >= -0.125 - 1e-10);
    CHECK(hi <= 1.0 + 1e-10);
    CHECK(lo < 0.0);
  }
}

TEST_CASE("work_distribution examples") {
  const auto z = spectral_decompose(pauli_z());
  SUBCASE("identity cyclic evolution leaves all TPM mass at zero") {
    const auto dist = work_distribution(tpm_joint(plus_state(), z, z, UnitaryPropagator::identity(2)));
    double at_zero = 0.0, elsewhere = 0.0;
    for (const auto& pt : dist.points) (pt.w == 0.0 ? at_zero : elsewhere) += std::abs(pt.p);
    CHECK(at_zero == doctest::Approx(1.0));
    CHECK(elsewhere < 1e-15);
  }
  SUBCASE("qubit cyclic support lies in {0, +-(h0 - h1)}") {
    SampleStream stream(2);
    for (int i = 0; i < 50; ++i) {
      const auto h = spectral_decompose(stream.gue(2));
      const double gap = h.levels()[0].energy - h.levels()[1].energy;
      const auto dist = work_distribution(mh_joint(stream.density_matrix(2, 1), h, h, stream.haar_unitary(2)));
      for (const auto& pt : dist.points) {
        const bool ok = std::abs(pt.w) < 1e-12 || std::abs(std::abs(pt.w) - gap) < 1e-12;
        CHECK(ok);
      }
    }
  }
  SUBCASE("hand-accumulated 2x2 table") {
    const auto dist = three_points();
    REQUIRE(dist.points.size() == 3);
    CHECK(dist.points[0].w == -2.0);
    CHECK(dist.points[0].p == doctest::Approx(0.2));
    CHECK(dist.points[1].w == 0.0);
    CHECK(dist.points[1].p == doctest::Approx(0.7));
    CHECK(dist.points[2].w == 2.0);
    CHECK(dist.points[2].p == doctest::Approx(0.1));
  }
  SUBCASE("nearby energies share a bin") {
    JointWorkTable t;
    t.P.resize(2, 2);
    t.P << 0.25, 0.25, 0.25, 0.25;
    t.e_init = {1.0, 0.0};
    t.e_final = {1.0 + 1e-12, 0.0};
    const auto dist = work_distribution(t, 1e-9);
    CHECK(dist.points.size() == 3);
    CHECK(dist.total() == doctest::Approx(1.0));
  }
}

TEST_CASE("moments_from_distribution examples") {
  const auto z = spectral_decompose(pauli_z());
  const auto at_zero = moments_from_distribution(
      work_distribution(tpm_joint(plus_state(), z, z, UnitaryPropagator::identity(2))), 6);
  for (int k = 1; k <= 6; ++k) CHECK(at_zero.moment(k) == 0.0);

  const auto ms = moments_from_distribution(three_points(), 2);
  CHECK(ms.mean() == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(ms.second() == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(ms.variance() == doctest::Approx(1.16).epsilon(1e-14));
  CHECK(ms.cumulant(2) == doctest::Approx(ms.variance()).epsilon(1e-14));

  SampleStream stream(4);
  const auto h0 = spectral_decompose(stream.gue(3));
  const auto h1 = spectral_decompose(stream.gue(3));
  const auto u = stream.haar_unitary(3);
  const auto g = gibbs_state(h0, 0.8).state;
  const auto tpm = moments_from_distribution(work_distribution(tpm_joint(g, h0, h1, u)), 6);
  const auto mh = moments_from_distribution(work_distribution(mh_joint(g, h0, h1, u)), 6);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(tpm.moment(k) - mh.moment(k)) <= 1e-12 * (1 + std::abs(tpm.moment(k))));

  CHECK_THROWS_AS(moments_from_distribution(three_points(), 7), InvalidArgument);
  CHECK_THROWS_AS(moments_from_distribution(three_points(), 0), InvalidArgument);
}

TEST_CASE("cumulants of a two-point distribution") {
  WorkDistribution d;
  d.points = {{-1.5, 0.5}, {1.5, 0.5}};
  const auto ms = moments_from_distribution(d, 6);
  CHECK(ms.cumulant(1) == doctest::Approx(0.0));
  CHECK(ms.cumulant(2) == doctest::Approx(2.25));
  CHECK(ms.cumulant(3) == doctest::Approx(0.0));
  // Fourth cumulant of a symmetric Bernoulli on +-a: -2 a^4.
  CHECK(ms.cumulant(4) == doctest::Approx(-2.0 * std::pow(1.5, 4)));
}

TEST_CASE("analytic moments") {
  const auto z = spectral_decompose(pauli_z());
  CHECK(analytic_moment_tpm(plus_state(), z, z, UnitaryPropagator::identity(2), 1) == 0.0);

  SampleStream stream(99);
  SUBCASE("incoherent states give identical low moments in both schemes") {
    for (int i = 0; i < 20; ++i) {
      const int d = 2 + i % 3;
      const auto h0 = spectral_decompose(stream.gue(d));
      const auto h1 = spectral_decompose(stream.gue(d));
      const auto u = stream.haar_unitary(d);
      const auto rho = dephase(stream.density_matrix(d, d), h0);
      for (int m = 1; m <= 2; ++m)
        CHECK(analytic_moment_tpm(rho, h0, h1, u, m) ==
              doctest::Approx(analytic_moment_mh(rho, h0, h1, u, m)).epsilon(1e-12));
    }
  }
  SUBCASE("qubit second moments agree for any cyclic instance") {
    for (int i = 0; i < 200; ++i) {
      const auto h = spectral_decompose(stream.gue(2));
      const auto rho = stream.density_matrix(2, 1);
      const auto u = stream.haar_unitary(2);
      CHECK(std::abs(analytic_moment_mh(rho, h, h, u, 2) - analytic_moment_tpm(rho, h, h, u, 2)) <= 1e-12);
    }
  }
  SUBCASE("analytic forms match distribution moments up to order 4") {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const int d = 2 + i % 3;
      const auto h0 = spectral_decompose(stream.gue(d));
      const auto h1 = spectral_decompose(stream.gue(d));
      const auto u = stream.haar_unitary(d);
      const auto rho = stream.density_matrix(d, 1 + i % d);
      const auto tpm = moments_from_distribution(work_distribution(tpm_joint(rho, h0, h1, u)), 4);
      const auto mh = moments_from_distribution(work_distribution(mh_joint(rho, h0, h1, u)), 4);
      for (int m = 1; m <= 4; ++m) {
        worst = std::max(worst, std::abs(analytic_moment_tpm(rho, h0, h1, u, m) - tpm.moment(m)));
        worst = std::max(worst, std::abs(analytic_moment_mh(rho, h0, h1, u, m) - mh.moment(m)));
      }
    }
    CHECK(worst <= 1e-9);
  }
  SUBCASE("degenerate qutrit, fourth MH moment") {
    const double s = 1.0 / std::sqrt(3.0);
    const auto h = HermitianObservable::diagonal({s, s, -2.0 * s});
    const auto rho = stream.density_matrix(3, 1);
    const auto u = stream.haar_unitary(3);
    const auto mh = moments_from_distribution(work_distribution(mh_joint(rho, h, h, u)), 4);
    CHECK(analytic_moment_mh(rho, h, h, u, 4) == doctest::Approx(mh.moment(4)).epsilon(1e-12));
  }
  SUBCASE("brute-force oracle for nondegenerate diagonal Hamiltonians") {
    for (int i = 0; i < 50; ++i) {
      const int d = 2 + i % 3;
      std::vector<double> e(d);
      for (int k = 0; k < d; ++k) e[k] = static_cast<double>(d - k) + stream.uniform(0.0, 0.5);
      const auto h = HermitianObservable::diagonal(e);
      const auto rho = stream.density_matrix(d, 1);
      const auto u = stream.haar_unitary(d);
      const auto ref = oracle::diagonal_tables(oracle::from_eigen(rho.matrix()), oracle::from_eigen(u.matrix()));
      for (int m = 1; m <= 4; ++m) {
        CHECK(analytic_moment_tpm(rho, h, h, u, m) == doctest::Approx(oracle::table_moment(ref.tpm, e, e, m)));
        CHECK(analytic_moment_mh(rho, h, h, u, m) == doctest::Approx(oracle::table_moment(ref.mh, e, e, m)));
      }
    }
  }
}

TEST_CASE("table invariants") {
  SampleStream stream(31);
  for (int i = 0; i < 300; ++i) {
    const int d = 2 + i % 4;
    const auto h0 = spectral_decompose(stream.gue(d));
    const auto h1 = spectral_decompose(stream.gue(d));
    const auto u = stream.haar_unitary(d);
    const auto rho = stream.density_matrix(d, 1 + i % d);
    for (Scheme s : {Scheme::TPM, Scheme::MH}) {
      const auto t = joint_table(s, rho, h0, h1, u);
      CHECK(std::abs(t.total() - 1.0) <= 1e-10);
      const RealVector marg = t.initial_marginal();
      for (int n = 0; n < h0.num_levels(); ++n) {
        const double pop = (h0.levels()[n].projector * rho.matrix()).trace().real();
        CHECK(std::abs(marg(n) - pop) <= 1e-10);
      }
      if (s == Scheme::TPM) CHECK(t.min_entry() >= -1e-12);
      const auto dist = work_distribution(t);
      CHECK(std::abs(dist.total() - 1.0) <= 1e-10);
      for (std::size_t k = 1; k < dist.points.size(); ++k)
        CHECK(dist.points[k].w - dist.points[k - 1].w > dist.bin_tol);
    }
  }
}

TEST_CASE("characteristic_function") {
  SampleStream stream(17);
  const auto h0 = spectral_decompose(stream.gue(3));
  const auto h1 = spectral_decompose(stream.gue(3));
  const auto dist = work_distribution(mh_joint(stream.density_matrix(3, 1), h0, h1, stream.haar_unitary(3)));
  const auto ms = moments_from_distribution(dist, 2);

  CHECK(std::abs(characteristic_function(dist, 0.0) - Complex(1.0, 0.0)) <= 1e-12);

  const double h = 1e-5;
  const Complex d1 = (characteristic_function(dist, h) - characteristic_function(dist, -h)) / (2 * h);
  CHECK(std::abs(d1.imag() - ms.mean()) <= 1e-6);
  CHECK(std::abs(d1.imag() - ms.mean()) <= 1e-5 * std::max(1.0, std::abs(ms.mean())));

  const double h2 = 1e-3;
  const Complex d2 = (characteristic_function(dist, h2) - 2.0 * characteristic_function(dist, 0.0) +
                      characteristic_function(dist, -h2)) /
                     (h2 * h2);
  CHECK(std::abs(-d2.real() - ms.second()) <= 1e-5 * std::max(1.0, ms.second()));

  WorkDistribution point;
  point.points = {{2.0, 1.0}};
  CHECK(std::abs(characteristic_function(point, kPi / 2) - Complex(-1.0, 0.0)) <= 1e-15);
}

TEST_CASE("scheme names round-trip") {
  CHECK(scheme_from_string(to_string(Scheme::TPM)) == Scheme::TPM);
  CHECK(scheme_from_string(to_string(Scheme::MH)) == Scheme::MH);
  CHECK_THROWS_AS(scheme_from_string("KD"), InvalidArgument);
}
