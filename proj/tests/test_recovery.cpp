#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edtn/recovery.hpp"

using namespace edtn;

namespace {

RVec v2(double a, double b) {
  RVec v(2);
  v << a, b;
  return v;
}

// root of the printed cubic in lambda/mu, by bisection on [0.1, 2]
double cubic_root(int n) {
  double a = 0.1, b = 2.0;
  const auto f = [n](double r) { return LameParams{r, 1}.nondegeneracy_cubic(n); };
  REQUIRE(f(a) * f(b) < 0);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (f(a) * f(m) <= 0 ? b : a) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("zero curvature recovers zero") {
  const auto s = forward_p0nn_samples(3, {2, 1}, v2(0, 0));
  for (double v : s) CHECK(v == 0.0);
  const auto e = recover_curvatures(s, 3, {2, 1});
  CHECK(e.kappas.cwiseAbs().maxCoeff() == 0.0);
  CHECK(e.sumKappa == 0.0);
}

TEST_CASE("round trip at n=3, lambda=2, mu=1, kappa=(0.3, 0.7)") {
  const auto s = forward_p0nn_samples(3, {2, 1}, v2(0.3, 0.7));
  const auto e = recover_curvatures(s, 3, {2, 1});
  CHECK(e.kappas(0) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(e.kappas(1) == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(e.sumKappa == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e.consistency < 1e-12);
}

TEST_CASE("round trip over random parameters and dimensions") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> u(0.1, 10);
  std::normal_distribution<double> nd;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const LameParams p{u(g), u(g)};
    RVec k(n - 1);
    for (int i = 0; i < n - 1; ++i) k(i) = nd(g);
    const auto e = recover_curvatures(forward_p0nn_samples(n, p, k), n, p);
    worst = std::max(worst, (e.kappas - k).cwiseAbs().maxCoeff() / std::max(1.0, k.cwiseAbs().maxCoeff()));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("estimate is linear in the samples") {
  const LameParams p{0.8, 1.3};
  auto s = forward_p0nn_samples(4, p, RVec::Constant(3, 0.25));
  const auto a = recover_curvatures(s, 4, p);
  for (double& v : s) v *= 2;
  const auto b = recover_curvatures(s, 4, p);
  CHECK(max_abs((b.kappas - 2 * a.kappas).cast<cplx>()) < 1e-13);
}

TEST_CASE("the map from the s~ combinations stays well conditioned") {
  std::mt19937_64 g(32);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int trial = 0; trial < 200; ++trial) {
    const LameParams p{u(g), u(g)};
    CHECK(recovery_condition(2 + trial % 5, p) < 100);
  }
  // including where the printed cubic vanishes
  CHECK(recovery_condition(3, {cubic_root(3), 1}) < 10);
}

TEST_CASE("the printed-constant map is singular at the printed cubic root") {
  const double r = cubic_root(3);
  CHECK(recovery_condition(3, {r, 1}, DSource::Printed) > 1e8);
  const auto s = forward_p0nn_samples(3, {r, 1}, v2(0.3, 0.7));
  try {
    recover_curvatures(s, 3, {r, 1}, DSource::Printed);
    FAIL("expected a Singular error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
}

TEST_CASE("inconsistent samples are reported") {
  auto s = forward_p0nn_samples(3, {2, 1}, v2(0.3, 0.7));
  s.back() += 0.1;
  try {
    recover_curvatures(s, 3, {2, 1});
    FAIL("expected a Data error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }
  CHECK_THROWS_AS(recover_curvatures({1.0}, 3, {2, 1}), Error);
}

TEST_CASE("recovery coefficients match their rational forms") {
  // A = (l+2mu) d1 - l, B = -2 (l+2mu) d2
  for (LameParams p : {LameParams{1, 1}, LameParams{2, 1}, LameParams{0.4, 2.2}}) {
    const double l = p.lambda, m = p.mu, q = (l + 3 * m) * (l + 3 * m);
    const double d1 = (l * l + 4 * l * m + 5 * m * m) / q, d2 = m * m / q;
    const auto [A, B] = recovery_coefficients(p);
    CHECK(A == doctest::Approx((l + 2 * m) * d1 - l).epsilon(1e-13));
    CHECK(B == doctest::Approx(-2 * (l + 2 * m) * d2).epsilon(1e-13));
  }
}
