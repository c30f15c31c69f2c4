#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "edtn/symbols.hpp"

using namespace edtn;

namespace {

RVec v1(double a) { return RVec::Constant(1, a); }
RVec v2(double a, double b) {
  RVec v(2);
  v << a, b;
  return v;
}
RVec v3(double a, double b, double c) {
  RVec v(3);
  v << a, b, c;
  return v;
}

// SPD with condition number near cond
RMat random_spd(std::mt19937_64& g, int d, double cond) {
  std::normal_distribution<double> nd;
  RMat A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = nd(g);
  Eigen::HouseholderQR<RMat> qr(A);
  const RMat Q = qr.householderQ();
  RVec ev(d);
  for (int i = 0; i < d; ++i) ev(i) = std::pow(cond, d == 1 ? 0.0 : double(i) / (d - 1));
  return Q * ev.asDiagonal() * Q.transpose();
}

RVec random_vec(std::mt19937_64& g, int d) {
  std::normal_distribution<double> nd;
  RVec v(d);
  for (int i = 0; i < d; ++i) v(i) = nd(g);
  return v;
}

const BoundaryPoint flat2 = BoundaryPoint::general(RMat::Identity(1, 1));

}  // namespace

TEST_CASE("b1 at n=2, flat, lambda = mu = 1") {
  CMat want(2, 2);
  want << 0.0, 2.0 * I, 2.0 * I / 3.0, 0.0;
  CHECK(max_abs(sym_b1(flat2, v1(1), {1, 1}).value - want) < 1e-15);
}

TEST_CASE("b1 vanishes when lambda + mu = 0") {
  CHECK(max_abs(sym_b1(flat2, v1(1.3), {-1, 1}).value) == 0.0);
}

TEST_CASE("b0 vanishes at a flat origin") {
  const auto b = sym_b(BoundaryPoint::origin(v2(0, 0)), v2(0.4, -1.2), {2, 1});
  CHECK(max_abs(b.second.value) == 0.0);
}

TEST_CASE("c2 at n=2, flat, lambda = mu = 1") {
  CMat want = CMat::Zero(2, 2);
  want(0, 0) = -3.0;
  want(1, 1) = -1.0 / 3.0;
  CHECK(max_abs(sym_c2(flat2, v1(1), {1, 1}).value - want) < 1e-15);
}

TEST_CASE("c2 is homogeneous of degree 2 and b1 of degree 1") {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial % 3;
    const auto pt = BoundaryPoint::general(random_spd(g, d, 10));
    const RVec xi = random_vec(g, d);
    const LameParams p{0.5 + trial, 1.3};
    const double c = 2.7;
    CHECK(max_abs(sym_c2(pt, c * xi, p).value - c * c * sym_c2(pt, xi, p).value) < 1e-12 * c * c * 10);
    CHECK(max_abs(sym_b1(pt, c * xi, p).value - c * sym_b1(pt, xi, p).value) < 1e-12 * c * 10);
  }
}

TEST_CASE("q1 at n=2, flat, lambda = mu = 1") {
  CMat want(2, 2);
  want << 1.5, 0.5 * I, 0.5 * I, 0.5;
  CHECK(max_abs(q1(flat2, v1(1), {1, 1}).value - want) < 1e-15);
  // q1^2 - b1 q1 = diag(3, 1/3) exactly here
  CHECK(verify_q1(flat2, v1(1), {1, 1}) < 1e-15);
}

TEST_CASE("q1 in the scalar case is |xi|_g times identity") {
  std::mt19937_64 g(6);
  const RMat gi = random_spd(g, 2, 50);
  const RVec xi = random_vec(g, 2);
  const double nrm = std::sqrt(xi.dot(gi * xi));
  const auto pt = BoundaryPoint::general(gi);
  CHECK(max_abs(q1(pt, xi, {-1, 1}).value - nrm * CMat::Identity(3, 3)) < 1e-14);
  CHECK(verify_q1(pt, xi, {-1, 1}) < 1e-15);
}

TEST_CASE("principal equation holds for random metrics, n = 2, 3, 4") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(0.1, 10);
  double worst = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 3;
    const auto pt = BoundaryPoint::general(random_spd(g, d, 1e3));
    const LameParams p{u(g), u(g)};
    worst = std::max(worst, verify_q1(pt, random_vec(g, d), p));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("q1 is homogeneous of degree 1") {
  std::mt19937_64 g(8);
  const auto pt = BoundaryPoint::general(random_spd(g, 3, 20));
  const RVec xi = random_vec(g, 3);
  CHECK(max_abs(q1(pt, 3.5 * xi, {2, 1}).value - 3.5 * q1(pt, xi, {2, 1}).value) < 1e-13);
}

TEST_CASE("Sylvester operator: U Uinv = I, closed form vs dense inverse") {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 3;
    const auto pt = BoundaryPoint::general(random_spd(g, d, 1e3));
    const RVec xi = random_vec(g, d);
    const LameParams p{u(g), u(g)};
    const auto op = sylvester_operator(pt, xi, p);
    const int N = (d + 1) * (d + 1);
    CHECK(max_abs(op.U * op.Uinv - CMat::Identity(N, N)) < 1e-10);
    const CMat dense = op.U.inverse();
    CHECK(max_abs(op.Uinv - dense) < 1e-8 * std::max(1.0, max_abs(dense)));
  }
}

TEST_CASE("Sylvester operator at n=2, lambda=2, mu=1 is 4x4 and matches L X + X M") {
  const auto op = sylvester_operator(flat2, v1(1), {2, 1});
  CHECK(op.U.rows() == 4);
  std::mt19937_64 g(10);
  std::normal_distribution<double> nd;
  CMat X(2, 2);
  for (int i = 0; i < 4; ++i) X(i % 2, i / 2) = cplx(nd(g), nd(g));
  CHECK(max_abs(op.U * vec(X) - vec(op.L * X + X * op.M)) < 1e-14);
  CHECK(max_abs(kron_vec(op.L, op.M, X) - op.U * vec(X)) < 1e-14);
}

TEST_CASE("Sylvester operator scales with xi") {
  std::mt19937_64 g(11);
  const auto pt = BoundaryPoint::general(random_spd(g, 2, 5));
  const RVec xi = random_vec(g, 2);
  const auto a = sylvester_operator(pt, xi, {1.5, 0.7});
  const auto b = sylvester_operator(pt, 4.0 * xi, {1.5, 0.7});
  CHECK(max_abs(b.U - 4.0 * a.U) < 1e-12 * max_abs(b.U));
  CHECK(max_abs(b.Uinv - 0.25 * a.Uinv) < 1e-12 * max_abs(a.Uinv));
}

TEST_CASE("solve_sylvester: X = I and X = 0 cases, random E against the dense solve") {
  std::mt19937_64 g(12);
  for (int d = 1; d <= 3; ++d) {
    const auto pt = BoundaryPoint::general(random_spd(g, d, 30));
    const RVec xi = random_vec(g, d);
    const auto op = sylvester_operator(pt, xi, {2, 1});
    const int n = d + 1;
    CHECK(max_abs(solve_sylvester(op, op.L + op.M) - CMat::Identity(n, n)) < 1e-12);
    CHECK(max_abs(solve_sylvester(op, CMat::Zero(n, n))) == 0.0);
    CMat E(n, n);
    std::normal_distribution<double> nd;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) E(i, j) = cplx(nd(g), nd(g));
    const CMat X = solve_sylvester(op, E);
    CHECK(sylvester_residual(op, X, E) < 1e-9);
    CHECK(max_abs(X - solve_sylvester_dense(op, E)) < 1e-9);
  }
}

TEST_CASE("E1 vanishes at kappa = 0 and is linear in kappa") {
  const RVec xi = v2(0.3, -0.8);
  const LameParams p{2, 1};
  CHECK(max_abs(E1_origin(v2(0, 0), xi, p).value) == 0.0);
  const CMat a = E1_origin(v2(0.3, 0.1), xi, p).value, b = E1_origin(v2(-1.1, 0.9), xi, p).value;
  const CMat ab = E1_origin(v2(-0.8, 1.0), xi, p).value;
  CHECK(max_abs(ab - a - b) < 1e-14);
  CHECK(max_abs(E1_origin(v2(0.6, 0.2), xi, p).value - 2.0 * a) < 1e-14);
}

TEST_CASE("q0 vanishes at kappa = 0 and is homogeneous of degree 0") {
  const LameParams p{2, 1};
  CHECK(max_abs(q0_origin(v3(0, 0, 0), v3(1, 2, 3), p).value) == 0.0);
  const RVec k = v3(0.2, -0.5, 1.1), xi = v3(0.3, 0.4, -1.2);
  CHECK(max_abs(q0_origin(k, 6.0 * xi, p).value - q0_origin(k, xi, p).value) < 1e-13);
}

TEST_CASE("q0 (n,n) at n=3, lambda=2, mu=1, kappa=(1,1), xi=(1,0) equals 32/25") {
  // d1 = (l^2+4 l mu+5 mu^2)/(l+3mu)^2 = 17/25, d2 = mu^2/(l+3mu)^2 = 1/25
  const CMat q0 = q0_origin(v2(1, 1), v2(1, 0), {2, 1}).value;
  CHECK(std::abs(q0(2, 2) - 32.0 / 25.0) < 1e-13);
}

TEST_CASE("q0 (n,n) follows d1 sum(kappa) - 2 d2 sum(kappa xi^2)/|xi|^2") {
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 4;
    const LameParams p{u(g), u(g)};
    const double l = p.lambda, m = p.mu, q = (l + 3 * m) * (l + 3 * m);
    const RVec k = random_vec(g, d), xi = random_vec(g, d);
    const double want = q0nn_from_d(k, xi, (l * l + 4 * l * m + 5 * m * m) / q, m * m / q);
    const cplx got = q0_origin(k, xi, p).value(d, d);
    CHECK(std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("q0 is equivariant under a permutation of tangential directions") {
  const LameParams p{0.7, 1.9};
  const RVec k = v3(0.2, -0.5, 1.1), xi = v3(0.3, 0.4, -1.2);
  const int perm[3] = {2, 0, 1};
  RVec kp(3), xp(3);
  RMat P = RMat::Zero(4, 4);
  P(3, 3) = 1;
  for (int i = 0; i < 3; ++i) {
    kp(i) = k(perm[i]);
    xp(i) = xi(perm[i]);
    P(i, perm[i]) = 1;
  }
  const CMat a = q0_origin(k, xi, p).value, b = q0_origin(kp, xp, p).value;
  CHECK(max_abs(b - P.cast<cplx>() * a * P.transpose().cast<cplx>()) < 1e-13);
  const CMat pa = dtn_p0(k, xi, p).value, pb = dtn_p0(kp, xp, p).value;
  CHECK(max_abs(pb - P.cast<cplx>() * pa * P.transpose().cast<cplx>()) < 1e-13);
}

TEST_CASE("p1 at n=2, lambda = mu = 1 is Hermitian with eigenvalues 2 and 1") {
  const CMat p1 = dtn_p1(flat2, v1(1), {1, 1}).value;
  CMat want(2, 2);
  want << 1.5, -0.5 * I, 0.5 * I, 1.5;
  CHECK(max_abs(p1 - want) < 1e-15);
  CHECK(max_abs(p1 - p1.adjoint()) < 1e-15);
  Eigen::SelfAdjointEigenSolver<CMat> es(p1);
  CHECK(es.eigenvalues()(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("p1 eigenvalues are mu |xi|, 2 mu |xi| and 2 mu (l+mu)/(l+3mu) |xi| at the origin") {
  std::mt19937_64 g(14);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 4;
    const LameParams p{u(g), u(g)};
    const RVec xi = random_vec(g, d);
    const double r = xi.norm(), m = p.mu, l = p.lambda;
    std::vector<double> want(d - 1, m * r);
    want.push_back(2 * m * r);
    want.push_back(2 * m * (l + m) / (l + 3 * m) * r);
    std::sort(want.begin(), want.end());
    const CMat p1 = dtn_p1(BoundaryPoint::origin(RVec::Zero(d)), xi, p).value;
    CHECK(max_abs(p1 - p1.adjoint()) < 1e-13 * r * m);
    Eigen::SelfAdjointEigenSolver<CMat> es(p1);
    for (int i = 0; i <= d; ++i) CHECK(es.eigenvalues()(i) == doctest::Approx(want[i]).epsilon(1e-11));
  }
}

TEST_CASE("p0 vanishes at kappa = 0, its (n,n) entry is real") {
  CHECK(max_abs(dtn_p0(v2(0, 0), v2(1, 2), {2, 1}).value) == 0.0);
  const CMat p0 = dtn_p0(v2(0.3, 0.7), v2(1, 2), {2, 1}).value;
  CHECK(std::abs(p0(2, 2).imag()) < 1e-15);
}

TEST_CASE("resolvent: psi_-1 (p1 - tau) = I and the closed form agrees") {
  const RVec xi = v2(1, 0);
  const auto r = resolvent(v2(0.4, 0.2), xi, {2, 1});
  for (cplx tau : {cplx(-1), cplx(0.3, 2.0), cplx(5, -1)}) {
    const CMat psi = r.psi1(tau);
    CHECK(max_abs(psi * (r.psi1.p1() - tau * CMat::Identity(3, 3)) - CMat::Identity(3, 3)) < 1e-10);
    CHECK(max_abs(r.psi1.psi1_closed(tau) - psi) < 1e-12);
  }
}

TEST_CASE("Tr psi_-1 matches its seven-term decomposition") {
  const LameParams p{2, 1};
  const auto r = resolvent(v2(0, 0), v2(1, 0), p);
  const auto terms = trace_psi1_terms(3, 1.0, -2.0, p);
  cplx sum = 0;
  for (cplx t : terms) sum += t;
  CHECK(std::abs(sum - r.psi1(-2.0).trace()) < 1e-10);
}

TEST_CASE("omega from the rank-one lemma matches the printed expression") {
  std::mt19937_64 g(15);
  std::uniform_real_distribution<double> u(0.1, 10);
  for (int trial = 0; trial < 30; ++trial) {
    const LameParams p{u(g), u(g)};
    const cplx tau(-u(g), u(g));
    const cplx a = omega_printed(1.7, tau, p), b = omega_lemma(1.7, tau, p);
    CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("Tr(psi p0 psi) = Tr(psi^2 p0)") {
  const auto r = resolvent(v3(0.3, -0.2, 0.9), v3(0.5, 1, -0.4), {0.8, 1.4});
  for (cplx tau : {cplx(-1), cplx(0.5, 1.5)}) {
    const CMat psi = r.psi1(tau), p0 = r.psi1.p0();
    CHECK(std::abs((psi * p0 * psi).trace() - (psi * psi * p0).trace()) < 1e-10);
    CHECK(max_abs(r.psi2(tau) + psi * p0 * psi) < 1e-12);
  }
}

TEST_CASE("resolvent refuses tau on a pole") {
  const auto r = resolvent(v1(1), v1(1), {1, 1});
  // speeds at lambda = mu = 1 and |xi| = 1: 1 and 2
  CHECK_THROWS_AS(r.psi1(2.0), Error);
  try {
    r.psi1(cplx(1.0, 1e-12));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleProximity);
  }
  CHECK_NOTHROW(r.psi1(cplx(1.0, 1e-3)));
}
