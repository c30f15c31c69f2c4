#include "verify_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <numbers>
#include <random>

#include "edtn/heattrace.hpp"
#include "edtn/recovery.hpp"
#include "edtn/spectrum.hpp"
#include "edtn/symbols.hpp"

namespace edtn::verify {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

std::string sf(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Case {
  int n;
  LameParams p;
  RMat gInv;
  RVec xi;
};

// SPD with eigenvalues log-uniform in [1, 1e3] up to a common scale
RMat random_spd(int d, std::mt19937_64& g) {
  std::normal_distribution<double> N(0, 1);
  std::uniform_real_distribution<double> U(0, 1);
  RMat A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = N(g);
  const RMat Q = Eigen::HouseholderQR<RMat>(A).householderQ();
  RVec ev(d);
  for (int i = 0; i < d; ++i) ev(i) = std::pow(10.0, 3 * U(g));
  if (d > 1) {
    ev(0) = 1;
    ev(1) = 1e3 * 0.999;  // pin the extremes so the sweep reaches condition ~1e3
  }
  const double s = std::pow(10.0, 2 * U(g) - 1);
  return s * Q * ev.asDiagonal() * Q.transpose();
}

LameParams random_params(std::mt19937_64& g) {
  std::uniform_real_distribution<double> U(0, 1);
  const double mu = std::exp(std::log(0.5) + U(g) * std::log(4.0));
  const double ratio = std::pow(10.0, 2 * U(g) - 1);  // lambda/mu in [0.1, 10]
  return {ratio * mu, mu};
}

std::vector<Case> symbol_sweep(int count) {
  std::mt19937_64 g(20260101);
  std::normal_distribution<double> N(0, 1);
  std::vector<Case> out;
  for (int i = 0; i < count; ++i) {
    Case c;
    c.n = 2 + i % 4;
    c.p = random_params(g);
    c.gInv = random_spd(c.n - 1, g);
    c.xi = RVec(c.n - 1);
    for (int j = 0; j < c.n - 1; ++j) c.xi(j) = N(g);
    if (c.xi.norm() < 1e-3) c.xi(0) += 1;
    out.push_back(c);
  }
  return out;
}

CriterionResult c1() {
  CriterionResult r{1, "principal-symbol equation", false, "", 0, 5.0, {}};
  double worst = 0;
  for (const Case& c : symbol_sweep(1000))
    worst = std::max(worst, verify_q1(BoundaryPoint::general(c.gInv), c.xi, c.p));
  r.pass = worst < 1e-10;
  r.detail = sf("max relative residual %.2e over 1000 cases (tol 1e-10)", worst);
  r.metrics = {{"max_residual", worst}, {"cases", 1000}, {"tol", 1e-10}};
  return r;
}

CriterionResult c2() {
  CriterionResult r{2, "Sylvester inverse table", false, "", 0, 10.0, {}};
  double wId = 0, wDense = 0;
  for (const Case& c : symbol_sweep(1000)) {
    const SylvesterOperator op = sylvester_operator(BoundaryPoint::general(c.gInv), c.xi, c.p);
    const int N = op.n * op.n;
    wId = std::max(wId, max_abs(op.U * op.Uinv - CMat::Identity(N, N)));
    const CMat dense = op.U.fullPivLu().inverse();
    wDense = std::max(wDense, max_abs(op.Uinv - dense) / max_abs(dense));
  }
  r.pass = wId < 1e-10 && wDense < 1e-8;
  r.detail = sf("max |U Uinv - I| %.2e (tol 1e-10), closed vs dense inverse %.2e (tol 1e-8)", wId, wDense);
  r.metrics = {{"max_identity_error", wId}, {"max_dense_gap", wDense}};
  return r;
}

CriterionResult c3() {
  CriterionResult r{3, "q0 (n,n) cross-identity", false, "", 0, 5.0, {}};
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> U(-2, 2);
  std::normal_distribution<double> N(0, 1);
  double wPrinted = 0, wChain = 0, wSyl = 0;
  for (int i = 0; i < 400; ++i) {
    const int n = 2 + i % 4;
    const LameParams p = random_params(g);
    RVec k(n - 1), xi(n - 1);
    for (int j = 0; j < n - 1; ++j) {
      k(j) = U(g);
      xi(j) = N(g);
    }
    const DerivedConstants dc = derive_constants(p);
    const BoundaryPoint pt = BoundaryPoint::origin(k);
    const SylvesterOperator op = sylvester_operator(pt, xi, p);
    const CMat E = E1_origin(k, xi, p).value;
    const CMat q0 = solve_sylvester(op, E);
    wSyl = std::max(wSyl, sylvester_residual(op, q0, E));
    const cplx nn = q0(n - 1, n - 1);
    wPrinted = std::max(wPrinted, std::abs(nn - q0nn_from_d(k, xi, dc.d1, dc.d2)));
    wChain = std::max(wChain, std::abs(nn - q0nn_from_d(k, xi, dc.d1Chain, dc.d2Chain)));
  }
  r.pass = wPrinted < 1e-10;
  const DerivedConstants d21 = derive_constants({2, 1});
  RVec k(2), xi(2);
  k << 1, 1;
  xi << 1, 0;
  const double ex = q0_origin(k, xi, {2, 1}).value(2, 2).real();
  r.detail = sf("printed d1,d2: max gap %.2e (tol 1e-10); d1,d2 from the s~ combinations: %.2e; "
                "Sylvester residual %.1e; (n=3,l=2,mu=1,k=(1,1),xi=e1) solve %.6g vs printed %.6g",
                wPrinted, wChain, wSyl, ex, q0nn_from_d(k, xi, d21.d1, d21.d2));
  r.metrics = {{"max_gap_printed_d", wPrinted}, {"max_gap_chain_d", wChain}, {"sylvester_residual", wSyl},
               {"example_solve", ex}};
  return r;
}

CriterionResult c4() {
  CriterionResult r{4, "residue golden table", false, "", 0, 10.0, {}};
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<double> worst(10, 0.0);
  double wPsi1 = 0, wPsi1Merged = 0;
  int done = 0;
  while (done < 50) {
    const double m = 0.5 + 1.5 * U(g), l = m * (-0.5 + 4.5 * U(g));
    const double x = 0.3 + 2.7 * U(g), t = 0.2 + 1.8 * U(g);
    if (std::abs(l - m) < 0.05 * m) continue;
    const LameParams p{l, m};
    const auto rows = residue_table(p, x, t);
    const PoleSet ps = PoleSet::from_speeds(p, x, 4);
    for (int i = 0; i < 10; ++i) {
      const double v = heat_contour(rows[i].f, ps, t).real();
      worst[i] = std::max(worst[i], std::abs(v - rows[i].closed) / std::max(1.0, std::abs(rows[i].closed)));
    }
    const int n = 2 + done % 3;
    wPsi1 = std::max(wPsi1, std::abs(heat_trace_psi1(n, p, x, t) - heat_trace_psi1_closed(n, p, x, t)));
    // same point with lambda = mu: poles mu|xi| and 2mu(l+mu)|xi|/(l+3mu) coincide
    const LameParams pm{m, m};
    wPsi1Merged = std::max(wPsi1Merged, std::abs(heat_trace_psi1(n, pm, x, t) - heat_trace_psi1_closed(n, pm, x, t)));
    ++done;
  }
  double wt = 0;
  for (double w : worst) wt = std::max(wt, w);
  r.pass = wt < 1e-9 && wPsi1 < 1e-9 && wPsi1Merged < 1e-9;
  r.detail = sf("10 rows x 50 points: worst %.2e; Tr psi_-1 heat %.2e, merged l=mu %.2e (tol 1e-9)", wt, wPsi1,
                wPsi1Merged);
  r.metrics = {{"row_worst", worst}, {"psi1", wPsi1}, {"psi1_merged", wPsi1Merged}};
  return r;
}

const std::vector<double> kRatios = {0.5, 1.0, 2.0, 3.0};

CriterionResult c5(int threads) {
  CriterionResult r{5, "a0 pipeline", false, "", 0, 60.0, {}};
  double worst = 0;
  nlohmann::json grid = nlohmann::json::array();
  HeatQuadOptions opt;
  opt.threads = threads;
  for (int n = 2; n <= 4; ++n)
    for (double ratio : kRatios) {
      const LameParams p{ratio, 1.0};
      const double num = heat_coeffs_numeric(n, p, RVec::Zero(n - 1), opt).a0;
      const double ref = a0_density(n, p);
      worst = std::max(worst, std::abs(num / ref - 1));
      grid.push_back({{"n", n}, {"lambda_over_mu", ratio}, {"numeric", num}, {"closed", ref}});
    }
  const double ex = heat_coeffs_numeric(3, {1, 1}, RVec::Zero(2), opt).a0;
  const double exErr = std::abs(ex / (9 / (8 * kPi)) - 1);
  r.pass = worst < 1e-6 && exErr < 1e-6;
  r.detail = sf("12-point grid worst relative %.2e; (n=3,l=mu=1) %.9f vs 9/(8pi) (tol 1e-6)", worst, ex);
  r.metrics = {{"worst_rel", worst}, {"grid", grid}};
  return r;
}

CriterionResult c6(int threads) {
  CriterionResult r{6, "a1 pipeline", false, "", 0, 120.0, {}};
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> U(-1, 1);
  double worstPrinted = 0, worstChain = 0;
  nlohmann::json grid = nlohmann::json::array();
  HeatQuadOptions opt;
  opt.threads = threads;
  for (int n = 2; n <= 4; ++n)
    for (double ratio : kRatios) {
      const LameParams p{ratio, 1.0};
      RVec k(n - 1);
      for (int j = 0; j < n - 1; ++j) k(j) = U(g);
      if (std::abs(k.sum()) < 0.2) k(0) += 0.5;
      const double num = heat_coeffs_numeric(n, p, k, opt).a1;
      const double printed = a1_density(n, p) * k.sum();
      const double chain = a1_density_chain(n, p) * k.sum();
      // chain vanishes at n = 2, so measure against the size of the printed value there
      const double scale = std::max(std::abs(chain), std::abs(printed));
      worstPrinted = std::max(worstPrinted, std::abs(num - printed) / std::abs(printed));
      worstChain = std::max(worstChain, std::abs(num - chain) / scale);
      grid.push_back({{"n", n}, {"lambda_over_mu", ratio}, {"sum_kappa", k.sum()}, {"numeric", num},
                      {"printed", printed}, {"chain", chain}});
    }
  const double ex = heat_coeffs_numeric(2, {1, 1}, RVec::Constant(1, 1.0), opt).a1;
  r.pass = worstPrinted < 1e-6;
  r.detail = sf("vs printed density: worst relative %.2e (tol 1e-6); vs the projection-derived density %.2e; "
                "(n=2,l=mu=1,k=1) numeric %.3e vs 77/(32pi)=%.6f",
                worstPrinted, worstChain, ex, 77 / (32 * kPi));
  r.metrics = {{"worst_rel_printed", worstPrinted}, {"worst_rel_chain", worstChain}, {"example_numeric", ex},
               {"grid", grid}};
  return r;
}

CriterionResult c7() {
  CriterionResult r{7, "disk heat trace vs A0, A1", false, "", 0, 120.0, {}};
  const LameParams p{1, 1};
  const DiskSpectrum s = disk_spectrum(p, 1.0, 600, true);
  Geometry geo;
  const HeatTotals h = total_heat_coefficients(geo, 2, p);
  const A1Fit f = fit_a1(s, h.A0);
  const double tS = f.tmin * heat_trace_partial_sum(s, f.tmin).value;
  const double a0Err = std::abs(tS / h.A0 - 1);
  const double a1Err = std::abs(f.a / h.A1 - 1);
  r.pass = a0Err < 5e-3 && a1Err < 0.05;
  r.detail = sf("t in [%.4g, %.4g]: fit S-3/t -> %.4f vs 77/16 (rel %.2f, tol 0.05); t S(t) = %.5f vs A0 = 3 "
                "(rel %.1e, tol 5e-3); oracle gap %.1e",
                f.tmin, f.tmax, f.a, a1Err, tS, a0Err, s.oracleError);
  r.metrics = {{"fit_a", f.a}, {"fit_b", f.b}, {"tmin", f.tmin}, {"A1_target", h.A1}, {"tS", tS},
               {"oracle_gap", s.oracleError}};
  return r;
}

CriterionResult c8() {
  CriterionResult r{8, "Weyl law", false, "", 0, 60.0, {}};
  double worst[2] = {0, 0};
  const LameParams ps[2] = {{1, 1}, {2, 1}};
  double slopes[2];
  for (int i = 0; i < 2; ++i) {
    const DiskSpectrum s = disk_spectrum(ps[i], 1.0, 600, false);
    slopes[i] = total_heat_coefficients(Geometry{}, 2, ps[i]).weylSlope;
    for (double tau = 50; tau <= 200 + 1e-9; tau += 0.25) {
      const double ratio = counting_function(s, tau) / tau;
      worst[i] = std::max(worst[i], std::abs(ratio / slopes[i] - 1));
    }
  }
  r.pass = worst[0] < 0.02 && worst[1] < 0.02;
  r.detail = sf("N(tau)/tau on [50,200]: l=mu=1 worst %.2e vs %.4f; l=2,mu=1 worst %.2e vs %.4f (tol 0.02)",
                worst[0], slopes[0], worst[1], slopes[1]);
  r.metrics = {{"worst_11", worst[0]}, {"worst_21", worst[1]}, {"slope_11", slopes[0]}, {"slope_21", slopes[1]}};
  return r;
}

double cubic_root_n3() {
  // printed cubic at n = 3: 2 l^3 + 10 l^2 + 8 l - 10 (mu = 1), one positive root
  double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (LameParams{mid, 1}.nondegeneracy_cubic(3) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CriterionResult c9() {
  CriterionResult r{9, "curvature recovery", false, "", 0, 5.0, {}};
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> U(-2, 2);
  double worst = 0;
  int cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (double ratio : {0.25, 0.5, 1.0, 2.0, 4.0})
      for (int i = 0; i < 20; ++i) {
        const LameParams p{ratio, 1.0};
        RVec k(n - 1);
        for (int j = 0; j < n - 1; ++j) k(j) = U(g);
        const CurvatureEstimate e = recover_curvatures(forward_p0nn_samples(n, p, k), n, p);
        worst = std::max(worst, (e.kappas - k).cwiseAbs().maxCoeff());
        ++cases;
      }
  const double root = cubic_root_n3();
  const double condRoot = recovery_condition(3, {root, 1});
  const double condNear = std::max(recovery_condition(3, {root - 0.1, 1}), recovery_condition(3, {root + 0.1, 1}));
  const double condPrinted = recovery_condition(3, {root, 1}, DSource::Printed);
  const bool onset = condRoot > 1e8 && condRoot > 1e4 * condNear;
  r.pass = worst < 1e-9 && onset;
  r.detail = sf("round trip worst %.2e over %d cases (tol 1e-9); at cubic root l/mu=%.6f cond %.3g (need > 1e8), "
                "+-0.1 cond %.3g; the printed-d map has cond %.2e there",
                worst, cases, root, condRoot, condNear, condPrinted);
  r.metrics = {{"roundtrip_worst", worst}, {"root", root}, {"cond_root", condRoot}, {"cond_near", condNear},
               {"cond_printed_d", condPrinted}};
  return r;
}

CriterionResult c10() {
  CriterionResult r{10, "disk mode exactness", false, "", 0, 60.0, {}};
  double wN = 0, wT = 0, wO = 0;
  int pairs = 0;
  for (const LameParams& p : {LameParams{1, 1}, LameParams{2, 1}, LameParams{0.3, 1.7}}) {
    for (int k = 0; k <= 600; ++k) {
      const ModeProblem mp = disk_mode_matrix(k, p, 1.0);
      for (int b = 0; b < 2; ++b)
        for (cplx sc : {cplx(1, 0), cplx(0, 1)}) {
          if (k == 0 && sc.imag() != 0) continue;
          const ZPoly U = mode_displacement(mp, b, sc, p, 1.0);
          wN = std::max(wN, navier_residual(U, p));
          wT = std::max(wT, traction_residual(U, mp.taus[b], p, 1.0));
          ++pairs;
        }
    }
    const DiskSpectrum s = disk_spectrum(p, 1.0, 600, false);
    wO = std::max(wO, oracle_gap(s.taus, disk_collocation_oracle(p, 1.0, 40, 256).taus, 50));
  }
  r.pass = wN < 1e-12 && wT < 1e-9 && wO < 1e-6;
  r.detail = sf("%d eigenpairs: interior residual %.1e (rounding only), traction %.2e (tol 1e-9); "
                "collocation first 50 %.2e (tol 1e-6)",
                pairs, wN, wT, wO);
  r.metrics = {{"pairs", pairs}, {"navier", wN}, {"traction", wT}, {"oracle", wO}};
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int threads, const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& onDone) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = Clock::now();
    CriterionResult r;
    try {
      switch (id) {
        case 1: r = c1(); break;
        case 2: r = c2(); break;
        case 3: r = c3(); break;
        case 4: r = c4(); break;
        case 5: r = c5(threads); break;
        case 6: r = c6(threads); break;
        case 7: r = c7(); break;
        case 8: r = c8(); break;
        case 9: r = c9(); break;
        default: r = c10(); break;
      }
    } catch (const std::exception& e) {
      r.id = id;
      r.pass = false;
      r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool inTime = r.limitSeconds <= 0 || r.seconds < r.limitSeconds;
    r.metrics["within_time_limit"] = inTime;
    r.pass = r.pass && inTime;
    if (onDone) onDone(r);
    out.push_back(r);
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  return sf("[%s] %2d %-28s %s; %.2f s (limit %.0f s)", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
            r.detail.c_str(), r.seconds, r.limitSeconds);
}

}  // namespace edtn::verify
