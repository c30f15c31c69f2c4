#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edtn/heattrace.hpp"
#include "edtn/spectrum.hpp"

using namespace edtn;

TEST_CASE("three-dimensional kernel from the rigid motions") {
  const auto s = disk_spectrum({1, 1}, 1.0, 50, false);
  int zeros = 0;
  for (const auto& e : s.entries) zeros += e.tau == 0.0;
  CHECK(zeros == 3);
  // the translations live in k = +-1, the rotation in k = 0
  CHECK(disk_mode_matrix(1, {1, 1}, 1.0).taus[0] == 0.0);
  CHECK(disk_mode_matrix(0, {1, 1}, 1.0).taus[0] == 0.0);
}

TEST_CASE("k = 0 splits into rotation and breathing") {
  for (LameParams p : {LameParams{1, 1}, LameParams{2, 1}, LameParams{0.3, 2}}) {
    const auto m = disk_mode_matrix(0, p, 2.0);
    CHECK(m.taus[0] == 0.0);
    // breathing: 2 (lambda + mu) / R
    CHECK(m.taus[1] == doctest::Approx(2 * (p.lambda + p.mu) / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("mode matrices: T v = tau G v for both branches") {
  for (int k = 0; k <= 30; k += 3) {
    const auto m = disk_mode_matrix(k, {2, 0.7}, 1.3);
    for (int b = 0; b < 2; ++b) {
      const RVec r = m.T * m.vecs[b] - m.taus[b] * m.G * m.vecs[b];
      CHECK(r.norm() < 1e-12 * (1 + m.taus[b]) * m.vecs[b].norm());
    }
  }
}

TEST_CASE("large k: tau/k approaches 2 mu/R and 2 mu (l+mu)/((l+3mu) R)") {
  const LameParams p{2, 1};
  const double R = 1.5;
  const int k = 100000;
  const auto m = disk_mode_matrix(k, p, R);
  std::array<double, 2> r{m.taus[0] / k, m.taus[1] / k};
  std::sort(r.begin(), r.end());
  const double c = 2 * p.mu * (p.lambda + p.mu) / (p.lambda + 3 * p.mu);
  CHECK(r[0] == doctest::Approx(c / R).epsilon(1e-4));
  CHECK(r[1] == doctest::Approx(2 * p.mu / R).epsilon(1e-4));
}

TEST_CASE("dilation R -> cR scales the spectrum by 1/c") {
  const auto a = disk_spectrum({1.5, 0.8}, 1.0, 40, false);
  const auto b = disk_spectrum({1.5, 0.8}, 3.0, 40, false);
  REQUIRE(a.taus.size() == b.taus.size());
  for (size_t i = 0; i < a.taus.size(); ++i) CHECK(b.taus[i] == doctest::Approx(a.taus[i] / 3.0).epsilon(1e-13));
}

TEST_CASE("collocation oracle agrees with the mode formulas") {
  const auto s = disk_spectrum({2, 1}, 1.0, 40, true);
  CHECK(s.oracleError >= 0);
  CHECK(s.oracleError < 1e-8);
  const auto o = disk_collocation_oracle({0.5, 1.5}, 2.0, 30, 200);
  const auto t = disk_spectrum({0.5, 1.5}, 2.0, 40, false);
  CHECK(oracle_gap(o.taus, t.taus, 40) < 1e-8);
}

TEST_CASE("mode fields solve the Navier system and the traction eigen-equation") {
  for (LameParams p : {LameParams{1, 1}, LameParams{3, 0.5}}) {
    for (int k : {0, 1, 2, 7, 20}) {
      const auto m = disk_mode_matrix(k, p, 1.4);
      for (int b = 0; b < 2; ++b) {
        for (cplx s : {cplx(1), I}) {
          const ZPoly U = mode_displacement(m, b, s, p, 1.4);
          CHECK(navier_residual(U, p) < 1e-13);
          CHECK(traction_residual(U, m.taus[b], p, 1.4) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("heat trace: partial sums against the closed series, limits") {
  const LameParams p{1, 1};
  const auto s = disk_spectrum(p, 1.0, 400, false);
  for (double t : {0.1, 0.5, 2.0}) {
    const auto ps = heat_trace_partial_sum(s, t);
    CHECK(ps.value == doctest::Approx(disk_heat_trace_exact(p, 1.0, t)).epsilon(1e-8));
  }
  // t -> infinity leaves the three zero modes
  CHECK(heat_trace_partial_sum(s, 60.0).value == doctest::Approx(3.0).epsilon(1e-12));
  // t S(t) -> A0 = 3
  CHECK(0.001 * disk_heat_trace_exact(p, 1.0, 0.001) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("S(t) - A0/t tends to the closed-form A1 of the circle") {
  const LameParams p{1, 1};
  Geometry c;
  const auto h = total_heat_coefficients(c, 2, p);
  for (double t : {1e-3, 1e-4})
    CHECK(std::abs(disk_heat_trace_exact(p, 1.0, t) - h.A0 / t - h.A1Chain) < 2 * t);
}

TEST_CASE("uncertified truncation is reported, with a hint") {
  const auto s = disk_spectrum({1, 1}, 1.0, 20, false);
  try {
    heat_trace_partial_sum(s, 0.01);
    FAIL("expected a Truncation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Truncation);
    CHECK(std::string(e.what()).find("K") != std::string::npos);
  }
  const double tmin = min_certified_t({1, 1}, 1.0, 20);
  CHECK_NOTHROW(heat_trace_partial_sum(s, tmin * 1.01));
  CHECK(truncation_tail({1, 1}, 1.0, 20, tmin * 1.01) < 1e-8);
}

TEST_CASE("counting function") {
  const auto s = disk_spectrum({1, 1}, 1.0, 600, false);
  const long n100 = counting_function(s, 100.0);
  CHECK(n100 >= 294);
  CHECK(n100 <= 306);
  CHECK(counting_function(s, -1.0) == 0);
  CHECK(counting_function(s, 0.0) == 3);
  long prev = 0;
  for (double tau = 0; tau < 400; tau += 7.3) {
    const long v = counting_function(s, tau);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(counting_function(s, counting_reliable_limit(s) * 1.01), Error);
}

TEST_CASE("Weyl slope from A0 / Gamma(n) at two parameter points") {
  for (LameParams p : {LameParams{1, 1}, LameParams{2, 1}}) {
    const auto s = disk_spectrum(p, 1.0, 600, false);
    const auto h = total_heat_coefficients(Geometry{}, 2, p);
    double worst = 0;
    for (double tau = 50; tau <= 200; tau += 0.5)
      worst = std::max(worst, std::abs(counting_function(s, tau) / (h.weylSlope * tau) - 1));
    CHECK(worst < 0.02);
  }
}

TEST_CASE("bad spectrum input") {
  CHECK_THROWS_AS(disk_spectrum({1, 1}, -1.0, 10, false), Error);
  CHECK_THROWS_AS(disk_spectrum({1, 1}, 1.0, 0, false), Error);
  CHECK_THROWS_AS(disk_spectrum({-1, 1}, 1.0, 10, false), Error);
}

TEST_CASE("ZPoly derivatives") {
  ZPoly p;
  p.add(3, 2, cplx(2, 1));  // (2+i) z^3 zbar^2
  const cplx z(0.3, -0.7);
  CHECK(std::abs(p.dz().eval(z) - 3.0 * cplx(2, 1) * z * z * std::conj(z) * std::conj(z)) < 1e-14);
  CHECK(std::abs(p.dzbar().eval(z) - 2.0 * cplx(2, 1) * z * z * z * std::conj(z)) < 1e-14);
  CHECK(std::abs(p.conj().eval(z) - std::conj(p.eval(z))) < 1e-14);
}
