#include "edtn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace edtn {

namespace {

double kolosov(const LameParams& p) { return (p.lambda + 3 * p.mu) / (p.lambda + p.mu); }

void check_disk(const LameParams& p, double R) {
  require_heat(p);
  if (!(R > 0) || !std::isfinite(R)) throw Error(ErrorKind::Config, "radius must be positive");
}

}  // namespace

ModeProblem disk_mode_matrix(int k, const LameParams& p, double R) {
  check_disk(p, R);
  if (k < 0) throw Error(ErrorKind::Config, "mode index must be >= 0 (use k -> -k symmetry)");
  const double m = p.mu, kap = kolosov(p);
  ModeProblem mp;
  mp.k = k;
  mp.T = RMat::Zero(2, 2);
  mp.G = RMat::Zero(2, 2);
  if (k == 0) {
    // phi = (a + i b) z : a breathes, b rotates
    mp.G(0, 0) = (kap - 1) / (2 * m);
    mp.G(1, 1) = (kap + 1) / (2 * m);
    mp.T(0, 0) = 2.0 / R;
  } else {
    // phi = A z^j, psi = B z^{j-2}, j = k+1; coordinates a = A R^j, b = B R^{j-2}
    const double j = k + 1;
    mp.G << kap, 0, -j, -1;
    mp.G /= (2 * m);
    mp.T << j, 0, j * (2 - j), -(j - 2);
    mp.T /= R;
  }
  if (std::abs(mp.G.determinant()) < 1e-12) throw Error(ErrorKind::Basis, "degenerate mode basis");
  // both matrices are lower triangular
  mp.taus[0] = mp.T(1, 1) / mp.G(1, 1);
  mp.taus[1] = mp.T(0, 0) / mp.G(0, 0);
  for (double& t : mp.taus)
    if (std::abs(t) < 1e-10 * m) t = 0.0;
  mp.vecs[0] = RVec::Unit(2, 1);
  RVec v1(2);
  const double den = mp.T(1, 1) - mp.taus[1] * mp.G(1, 1);
  const double num = mp.T(1, 0) - mp.taus[1] * mp.G(1, 0);
  v1 << 1.0, (std::abs(den) > 1e-14 * (1 + std::abs(num)) ? -num / den : 0.0);
  mp.vecs[1] = v1;
  return mp;
}

DiskSpectrum disk_spectrum(const LameParams& p, double R, int K, bool validate) {
  check_disk(p, R);
  if (K < 2) throw Error(ErrorKind::Config, "K must be >= 2");
  DiskSpectrum s;
  s.R = R;
  s.params = p;
  s.K = K;
  for (int k = 0; k <= K; ++k) {
    const ModeProblem mp = disk_mode_matrix(k, p, R);
    for (int b = 0; b < 2; ++b) {
      s.entries.push_back({k, b, mp.taus[b]});
      if (k > 0) s.entries.push_back({-k, b, mp.taus[b]});
    }
  }
  std::sort(s.entries.begin(), s.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
    if (a.tau != b.tau) return a.tau < b.tau;
    if (a.k != b.k) return a.k < b.k;
    return a.branch < b.branch;
  });
  for (const auto& e : s.entries) s.taus.push_back(e.tau);
  if (validate) {
    const CollocationResult o = disk_collocation_oracle(p, R, 40, 256);
    s.oracleError = oracle_gap(s.taus, o.taus, 50);
    if (!(s.oracleError < 1e-6)) throw Error(ErrorKind::Oracle, "disk modes disagree with the collocation oracle");
  }
  return s;
}

CollocationResult disk_collocation_oracle(const LameParams& p, double R, int D, int N) {
  check_disk(p, R);
  if (D < 2 || N < 4 * D) throw Error(ErrorKind::Config, "collocation needs degree >= 2 and points >= 4*degree");
  const double l = p.lambda, m = p.mu;
  // Papkovich-Neuber in the plane: u = Psi - c grad(x.Psi + phi)
  const double c = (l + m) / (2 * (l + 2 * m));
  std::vector<std::pair<int, cplx>> gens;  // h = Re(g (z/R)^j)
  for (int j = 0; j <= D; ++j) {
    gens.push_back({j, 1.0});
    if (j > 0) gens.push_back({j, -I});
  }
  const int nb = 3 * static_cast<int>(gens.size());
  RMat Ud(2 * N, nb), Tr(2 * N, nb);
  for (int q = 0; q < N; ++q) {
    const double th = 2 * M_PI * q / N;
    const double nx = std::cos(th), ny = std::sin(th);
    const double x = R * nx, y = R * ny;
    const cplx w = std::polar(1.0, th);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const int j = gens[gi].first;
      const cplx g = gens[gi].second;
      const cplx f = g * std::pow(w, j);
      const cplx f1 = j >= 1 ? g * double(j) * std::pow(w, j - 1) / R : 0.0;
      const cplx f2 = j >= 2 ? g * double(j * (j - 1)) * std::pow(w, j - 2) / (R * R) : 0.0;
      const double h = f.real(), hx = f1.real(), hy = (I * f1).real();
      const double hxx = f2.real(), hxy = (I * f2).real(), hyy = -hxx;
      double u[3][2], du[3][2][2];  // field, component, d/dx d/dy
      {  // Psi = (h, 0)
        const double px = h + x * hx, py = x * hy;
        const double pxx = 2 * hx + x * hxx, pxy = hy + x * hxy, pyy = x * hyy;
        u[0][0] = h - c * px;
        u[0][1] = -c * py;
        du[0][0][0] = hx - c * pxx;
        du[0][0][1] = hy - c * pxy;
        du[0][1][0] = -c * pxy;
        du[0][1][1] = -c * pyy;
      }
      {  // Psi = (0, h)
        const double px = y * hx, py = h + y * hy;
        const double pxx = y * hxx, pxy = hx + y * hxy, pyy = 2 * hy + y * hyy;
        u[1][0] = -c * px;
        u[1][1] = h - c * py;
        du[1][0][0] = -c * pxx;
        du[1][0][1] = -c * pxy;
        du[1][1][0] = hx - c * pxy;
        du[1][1][1] = hy - c * pyy;
      }
      {  // phi = h
        u[2][0] = -c * hx;
        u[2][1] = -c * hy;
        du[2][0][0] = -c * hxx;
        du[2][0][1] = -c * hxy;
        du[2][1][0] = -c * hxy;
        du[2][1][1] = -c * hyy;
      }
      for (int f3 = 0; f3 < 3; ++f3) {
        const int col = 3 * static_cast<int>(gi) + f3;
        const double dv = du[f3][0][0] + du[f3][1][1];
        const double sxx = l * dv + 2 * m * du[f3][0][0];
        const double syy = l * dv + 2 * m * du[f3][1][1];
        const double sxy = m * (du[f3][0][1] + du[f3][1][0]);
        Ud(2 * q, col) = u[f3][0];
        Ud(2 * q + 1, col) = u[f3][1];
        Tr(2 * q, col) = sxx * nx + sxy * ny;
        Tr(2 * q + 1, col) = sxy * nx + syy * ny;
      }
    }
  }
  Eigen::BDCSVD<RMat> svd(Ud, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& S = svd.singularValues();
  int r = 0;
  while (r < S.size() && S(r) > 1e-11 * S(0)) ++r;
  const RMat W = svd.matrixU().leftCols(r);
  const RMat V = svd.matrixV().leftCols(r);
  const RMat A = W.transpose() * Tr * V * S.head(r).cwiseInverse().asDiagonal();
  Eigen::EigenSolver<RMat> es(A, false);
  CollocationResult out;
  out.rank = r;
  out.points = N;
  out.degree = D;
  for (int i = 0; i < r; ++i) {
    double t = es.eigenvalues()(i).real();
    if (std::abs(t) < 1e-10 * m) t = 0.0;
    out.taus.push_back(t);
  }
  std::sort(out.taus.begin(), out.taus.end());
  return out;
}

double oracle_gap(const std::vector<double>& a, const std::vector<double>& b, int count) {
  if (static_cast<int>(a.size()) < count || static_cast<int>(b.size()) < count)
    throw Error(ErrorKind::Oracle, "not enough eigenvalues to compare");
  double g = 0;
  for (int i = 0; i < count; ++i) g = std::max(g, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return g;
}

double truncation_tail(const LameParams& p, double R, int K, double t) {
  const DerivedConstants c = derive_constants(p);
  const double m = p.mu, cc = c.speeds[2];
  return 2 * std::exp(-2 * m * t * K / R) / (1 - std::exp(-2 * m * t / R)) +
         2 * std::exp(-cc * t * (K + 2) / R) / (1 - std::exp(-cc * t / R));
}

double min_certified_t(const LameParams& p, double R, int K, double tol) {
  double lo = 1e-12, hi = 1.0;
  while (truncation_tail(p, R, K, hi) > tol) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (truncation_tail(p, R, K, mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

PartialSum heat_trace_partial_sum(const DiskSpectrum& s, double t, double tol) {
  if (!(t > 0)) throw Error(ErrorKind::Config, "t must be positive");
  PartialSum ps;
  ps.tailBound = truncation_tail(s.params, s.R, s.K, t);
  if (!(ps.tailBound < tol)) {
    int need = s.K;
    while (truncation_tail(s.params, s.R, need, t) >= tol && need < (1 << 30)) need *= 2;
    throw Error(ErrorKind::Truncation, "partial sum not certified at this t; need K >= " + std::to_string(need));
  }
  std::vector<double> terms;
  terms.reserve(s.taus.size());
  // largest first so the small terms are not swamped
  for (auto it = s.taus.rbegin(); it != s.taus.rend(); ++it) terms.push_back(std::exp(-t * *it));
  double sum = 0;
  for (double v : terms) sum += v;
  ps.value = sum;
  return ps;
}

double disk_heat_trace_exact(const LameParams& p, double R, double t) {
  check_disk(p, R);
  const DerivedConstants c = derive_constants(p);
  const double m = p.mu, cc = c.speeds[2];
  return 1 + std::exp(-2 * (p.lambda + m) * t / R) + 2 / (-std::expm1(-2 * m * t / R)) +
         2 * std::exp(-2 * cc * t / R) / (-std::expm1(-cc * t / R));
}

double counting_reliable_limit(const DiskSpectrum& s) {
  const DerivedConstants c = derive_constants(s.params);
  return 0.8 * std::min(2 * s.params.mu, c.speeds[2]) * s.K / s.R;
}

long counting_function(const DiskSpectrum& s, double tau) {
  if (tau >= counting_reliable_limit(s))
    throw Error(ErrorKind::Truncation, "tau beyond the reliable counting range for this K");
  return std::upper_bound(s.taus.begin(), s.taus.end(), tau) - s.taus.begin();
}

A1Fit fit_a1(const DiskSpectrum& s, double A0, int samples) {
  A1Fit f;
  f.tmin = min_certified_t(s.params, s.R, s.K);
  f.tmax = 10 * f.tmin;
  f.samples = samples;
  RMat X(samples, 2);
  RVec y(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = f.tmin * std::pow(10.0, double(i) / (samples - 1));
    X(i, 0) = 1;
    X(i, 1) = t;
    y(i) = heat_trace_partial_sum(s, t).value - A0 / t;
  }
  const RVec c = X.colPivHouseholderQr().solve(y);
  f.a = c(0);
  f.b = c(1);
  return f;
}

void ZPoly::add(int a, int b, cplx c) {
  if (a < 0 || b < 0 || c == 0.0) return;
  for (auto& t : terms)
    if (t.first.first == a && t.first.second == b) {
      t.second += c;
      return;
    }
  terms.push_back({{a, b}, c});
}

ZPoly ZPoly::conj() const {
  ZPoly o;
  for (const auto& t : terms) o.add(t.first.second, t.first.first, std::conj(t.second));
  return o;
}

ZPoly ZPoly::dz() const {
  ZPoly o;
  for (const auto& t : terms) o.add(t.first.first - 1, t.first.second, double(t.first.first) * t.second);
  return o;
}

ZPoly ZPoly::dzbar() const {
  ZPoly o;
  for (const auto& t : terms) o.add(t.first.first, t.first.second - 1, double(t.first.second) * t.second);
  return o;
}

ZPoly ZPoly::operator+(const ZPoly& x) const {
  ZPoly o = *this;
  for (const auto& t : x.terms) o.add(t.first.first, t.first.second, t.second);
  return o;
}

ZPoly ZPoly::operator*(cplx s) const {
  ZPoly o;
  for (const auto& t : terms) o.add(t.first.first, t.first.second, s * t.second);
  return o;
}

cplx ZPoly::eval(cplx z) const {
  cplx v = 0;
  for (const auto& t : terms) v += t.second * std::pow(z, t.first.first) * std::pow(std::conj(z), t.first.second);
  return v;
}

double ZPoly::max_coeff() const {
  double m = 0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.second));
  return m;
}

ZPoly mode_displacement(const ModeProblem& mp, int branch, cplx scale, const LameParams& p, double R) {
  const double m = p.mu, kap = kolosov(p);
  const RVec& v = mp.vecs[branch];
  ZPoly U;
  if (mp.k == 0) {
    // real coordinates only; scale must be real here
    const cplx A = scale.real() * cplx(v(0), v(1)) / R;
    U.add(1, 0, kap * A / (2 * m));
    U.add(1, 0, -std::conj(A) / (2 * m));
    return U;
  }
  const int j = mp.k + 1;
  const cplx A = scale * v(0) / std::pow(R, j);
  const cplx B = scale * v(1) / std::pow(R, j - 2);
  // 2 mu U = kappa phi - z conj(phi') - conj(psi)
  U.add(j, 0, kap * A / (2 * m));
  U.add(1, j - 1, -double(j) * std::conj(A) / (2 * m));
  U.add(0, j - 2, -std::conj(B) / (2 * m));
  return U;
}

double navier_residual(const ZPoly& U, const LameParams& p) {
  const double l = p.lambda, m = p.mu;
  const ZPoly lap = U.dzbar().dz() * (4 * m);
  const ZPoly gd = (U.dz() + U.conj().dzbar()).dzbar() * (2 * (l + m));
  // two derivatives bring down up to deg^2
  double scale = 0;
  for (const auto& t : U.terms) {
    const double d = t.first.first + t.first.second;
    scale = std::max(scale, std::abs(t.second) * (d * d + 1));
  }
  return (lap + gd).max_coeff() / (std::max(scale, 1e-300) * (l + 2 * m));
}

double traction_residual(const ZPoly& U, double tau, const LameParams& p, double R, int samples) {
  const double l = p.lambda, m = p.mu;
  const ZPoly Uz = U.dz(), Uzb = U.dzbar();
  double worst = 0, size = 0;
  for (int q = 0; q < samples; ++q) {
    const double th = 2 * M_PI * (q + 0.5) / samples;
    const cplx z = R * std::polar(1.0, th);
    const cplx a = Uz.eval(z), b = Uzb.eval(z);
    const cplx Ux = a + b, Uy = I * (a - b);
    const double ux = Ux.real(), vx = Ux.imag(), uy = Uy.real(), vy = Uy.imag();
    const double dv = ux + vy;
    const double sxx = l * dv + 2 * m * ux, syy = l * dv + 2 * m * vy, sxy = m * (uy + vx);
    const double nx = std::cos(th), ny = std::sin(th);
    const cplx tr(sxx * nx + sxy * ny, sxy * nx + syy * ny);
    const cplx u = U.eval(z);
    worst = std::max(worst, std::abs(tr - tau * u));
    size = std::max(size, std::max(std::abs(tr), std::abs(u) * std::max(tau, m / R)));
  }
  return worst / std::max(size, 1e-300);
}

}  // namespace edtn
