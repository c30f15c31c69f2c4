#include "edtn/heattrace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace edtn {

namespace {

constexpr double kPi = std::numbers::pi;

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double kxr(const RVec& k, const RVec& xi) {
  return (k.array() * xi.array() * xi.array()).sum() / xi.squaredNorm();
}

void check_heat_args(int n, const LameParams& p) {
  if (n < 2) throw Error(ErrorKind::Config, "dimension n must be >= 2");
  require_heat(p);
}

}  // namespace

PoleSet PoleSet::merged(const std::vector<Pole>& raw, double tol) {
  std::vector<Pole> v = raw;
  std::sort(v.begin(), v.end(), [](const Pole& a, const Pole& b) {
    return a.location.real() < b.location.real() ||
           (a.location.real() == b.location.real() && a.location.imag() < b.location.imag());
  });
  PoleSet out;
  out.mergeTol = tol;
  std::vector<int> count;
  for (const Pole& p : v) {
    bool joined = false;
    for (std::size_t i = 0; i < out.poles.size(); ++i) {
      if (std::abs(out.poles[i].location - p.location) <= tol) {
        // running mean keeps the circle centred on the cluster
        out.poles[i].location = (out.poles[i].location * double(count[i]) + p.location) / double(count[i] + 1);
        out.poles[i].maxOrder = std::max(out.poles[i].maxOrder, p.maxOrder);
        ++count[i];
        joined = true;
        break;
      }
    }
    if (!joined) {
      out.poles.push_back(p);
      count.push_back(1);
    }
  }
  return out;
}

PoleSet PoleSet::from_speeds(const LameParams& p, double xiNorm, int order) {
  const DerivedConstants c = derive_constants(p);
  std::vector<Pole> raw;
  for (double s : c.speeds) raw.push_back({cplx(s * xiNorm, 0.0), order});
  return merged(raw, 1e-6 * xiNorm);
}

cplx heat_contour(const std::function<cplx(cplx)>& f, const PoleSet& ps, double t,
                  const ContourOptions& opt) {
  if (!(t > 0.0)) throw Error(ErrorKind::Config, "t must be positive");
  if (opt.nodes < 4 || opt.maxNodes < opt.nodes) throw Error(ErrorKind::Config, "bad contour node counts");
  cplx total = 0.0;
  const auto& P = ps.poles;
  for (std::size_t i = 0; i < P.size(); ++i) {
    const cplx pl = P[i].location;
    if (std::abs(pl) == 0.0) throw Error(ErrorKind::Config, "pole at the origin has no admissible circle");
    double gap = std::abs(pl);
    for (std::size_t j = 0; j < P.size(); ++j)
      if (j != i) gap = std::min(gap, std::abs(P[j].location - pl));
    double rho = 0.5 * std::abs(pl);
    if (P.size() > 1) rho = std::min(0.4 * gap, rho);
    if (ps.mergeTol >= 0.5 * rho) throw Error(ErrorKind::Config, "pole circles overlap after merge");

    auto g = [&](double th, double& mass) {
      const cplx e = std::polar(1.0, th);
      const cplx z = pl + rho * e;
      const cplx v = std::exp(-t * z) * f(z) * rho * e;
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw Error(ErrorKind::Nonconvergence, "non-finite integrand on contour");
      mass += std::abs(v);
      return v;
    };
    int M = opt.nodes;
    double mass = 0.0;
    cplx S = 0.0;
    for (int j = 0; j < M; ++j) S += g(2 * kPi * j / M, mass);
    cplx I = S / double(M);
    for (;;) {
      if (2 * M > opt.maxNodes) throw Error(ErrorKind::Nonconvergence, "contour quadrature did not settle");
      for (int j = 0; j < M; ++j) S += g(2 * kPi * (2 * j + 1) / (2.0 * M), mass);
      M *= 2;
      const cplx In = S / double(M);
      const double scale = std::max(std::abs(In), mass / (1.5 * M));
      const bool done = std::abs(In - I) <= opt.relTol * scale;
      I = In;
      if (done) break;
    }
    total += I;
  }
  return total;
}

double heat_trace_psi1(int n, const LameParams& p, double xiNorm, double t) {
  check_heat_args(n, p);
  if (!(xiNorm > 0)) throw Error(ErrorKind::Config, "|xi| must be positive");
  RVec xi = RVec::Zero(n - 1);
  xi(0) = xiNorm;
  const BoundaryPoint pt = BoundaryPoint::origin(RVec::Zero(n - 1));
  const ResolventSymbol psi(-1, dtn_p1(pt, xi, p).value, CMat::Zero(n, n), xi, p);
  const auto f = [&](cplx z) { return psi.psi1_dense(z).trace(); };
  return -heat_contour(f, PoleSet::from_speeds(p, xiNorm, 1), t).real();
}

double heat_trace_psi1_closed(int n, const LameParams& p, double r, double t) {
  check_heat_args(n, p);
  const DerivedConstants c = derive_constants(p);
  return std::exp(-c.speeds[1] * r * t) + std::exp(-c.speeds[2] * r * t) +
         (n - 2) * std::exp(-c.speeds[0] * r * t);
}

double heat_trace_psi2(int n, const LameParams& p, const RVec& k, const RVec& xi, double t) {
  check_heat_args(n, p);
  if (k.size() != n - 1 || xi.size() != n - 1) throw Error(ErrorKind::Shape, "kappas and xi need n-1 entries");
  const ResolventPair rp = resolvent(k, xi, p);
  const CMat& P0 = rp.psi1.p0();
  const auto f = [&](cplx z) {
    const CMat s = rp.psi1.psi1_dense(z);
    return (s * P0 * s).trace();
  };
  return heat_contour(f, PoleSet::from_speeds(p, xi.norm(), 2), t).real();
}

double heat_trace_psi2_printed(int n, const LameParams& p, const RVec& k, const RVec& xi, double t) {
  check_heat_args(n, p);
  const double l = p.lambda, m = p.mu, r = xi.norm();
  const double K = k.sum(), X = kxr(k, xi);
  const double L3 = std::pow(l + 3 * m, 3), L2 = std::pow(l + 3 * m, 2);
  const double A = (l * l * l + 23 * l * l * m + 87 * l * m * m + 97 * m * m * m) / (4 * L3);
  const double B = (2 * l * l * l + 9 * l * l * m + 10 * l * m * m - m * m * m) / L2;
  const double C = m * (15 * l * l * l + 105 * l * l * m + 233 * l * m * m + 175 * m * m * m) / (4 * L3);
  const double c = 2 * m * (l + m) / (l + 3 * m);
  return -0.5 * n * m * t * std::exp(-m * r * t) * (K - X) -
         m * t * std::exp(-2 * m * r * t) * (K + X * A) + t * std::exp(-c * r * t) * (K * B + X * C);
}

double heat_trace_psi2_chain(int n, const LameParams& p, const RVec& k, const RVec& xi, double t) {
  check_heat_args(n, p);
  const double l = p.lambda, m = p.mu, r = xi.norm();
  const double K = k.sum(), X = kxr(k, xi);
  const double L2 = std::pow(l + 3 * m, 2);
  const double c = 2 * m * (l + m) / (l + 3 * m);
  return -0.5 * n * m * t * std::exp(-m * r * t) * (K - X) - m * t * std::exp(-2 * m * r * t) * (K + X) +
         t * std::exp(-c * r * t) * m * ((l * l - 5 * m * m) * K + (l * l + 8 * l * m + 11 * m * m) * X) / L2;
}

double sphere_volume(int dim) {
  if (dim < 0) throw Error(ErrorKind::Config, "sphere dimension must be >= 0");
  const double h = 0.5 * (dim + 1);
  return 2.0 * std::pow(kPi, h) / boost::math::tgamma(h);
}

double radial_gamma_integral(int n, double m, double C, bool directional) {
  if (n < 2) throw Error(ErrorKind::Config, "n must be >= 2");
  if (!(C > 0)) throw Error(ErrorKind::Config, "decay C must be positive");
  if (!(m >= 0)) throw Error(ErrorKind::Config, "power m must be >= 0");
  double v = sphere_volume(n - 2) * boost::math::tgamma(n - 1 + m) / std::pow(C, n - 1 + m);
  if (directional) v /= (n - 1);
  return v;
}

namespace {

double prefactor(int n) {
  return boost::math::tgamma(double(n - 1)) * sphere_volume(n - 2) / std::pow(2 * kPi, n - 1);
}

}  // namespace

double a0_density(int n, const LameParams& p) {
  check_heat_args(n, p);
  const double l = p.lambda, m = p.mu;
  const double kk = (l + 3 * m) / (l + m);
  return prefactor(n) / std::pow(m, n - 1) * ((1 + std::pow(kk, n - 1)) / std::pow(2.0, n - 1) + (n - 2));
}

double a1_density(int n, const LameParams& p) {
  check_heat_args(n, p);
  const double l = p.lambda, m = p.mu;
  const double L3 = std::pow(l + 3 * m, 3), L2 = std::pow(l + 3 * m, 2);
  const double t1 = n * (2.0 - n) / (2.0 * (n - 1) * std::pow(m, n - 2));
  const double t2 = -(1 + (l * l * l + 23 * l * l * m + 87 * l * m * m + 97 * m * m * m) / (4.0 * (n - 1) * L3)) *
                    m / std::pow(2 * m, n - 1);
  const double t3 = ((2 * l * l * l + 9 * l * l * m + 10 * l * m * m - m * m * m) / L2 +
                     m * (15 * l * l * l + 105 * l * l * m + 233 * l * m * m + 175 * m * m * m) / (4.0 * (n - 1) * L3)) *
                    std::pow((l + 3 * m) / (2 * m * (l + m)), n - 1);
  return prefactor(n) * (t1 + t2 + t3);
}

double a1_density_chain(int n, const LameParams& p) {
  check_heat_args(n, p);
  const double l = p.lambda, m = p.mu;
  const double L2 = std::pow(l + 3 * m, 2);
  const double t1 = n * (2.0 - n) / (2.0 * (n - 1) * std::pow(m, n - 2));
  const double t2 = -(1 + 1.0 / (n - 1)) * m / std::pow(2 * m, n - 1);
  const double t3 = m * ((l * l - 5 * m * m) + (l * l + 8 * l * m + 11 * m * m) / (n - 1)) / L2 *
                    std::pow((l + 3 * m) / (2 * m * (l + m)), n - 1);
  return prefactor(n) * (t1 + t2 + t3);
}

void gauss_jacobi_sym(int m, double a, std::vector<double>& x, std::vector<double>& w) {
  if (m < 1 || a <= -1) throw Error(ErrorKind::Config, "bad Gauss-Jacobi request");
  RMat J = RMat::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double s = 2 * k + 2 * a;
    const double beta = 4.0 * k * (k + a) * (k + a) * (k + 2 * a) / (s * s * (s + 1) * (s - 1));
    J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(J);
  const double mu0 = std::pow(2.0, 2 * a + 1) * std::pow(boost::math::tgamma(a + 1), 2) / boost::math::tgamma(2 * a + 2);
  x.resize(m);
  w.resize(m);
  for (int i = 0; i < m; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
}

SphereRule sphere_rule(int d, int gaussOrder, int circleNodes) {
  if (d < 1) throw Error(ErrorKind::Config, "sphere rule needs d >= 1");
  SphereRule s;
  if (d == 1) {
    s.nodes = {RVec::Constant(1, 1.0), RVec::Constant(1, -1.0)};
    s.weights = {1.0, 1.0};
    return s;
  }
  if (d == 2) {
    for (int j = 0; j < circleNodes; ++j) {
      const double th = 2 * kPi * j / circleNodes;
      RVec v(2);
      v << std::cos(th), std::sin(th);
      s.nodes.push_back(v);
      s.weights.push_back(2 * kPi / circleNodes);
    }
    return s;
  }
  // slice along the last axis: weight (1-u^2)^{(d-3)/2}
  std::vector<double> u, wu;
  gauss_jacobi_sym(gaussOrder, 0.5 * (d - 3), u, wu);
  const SphereRule sub = sphere_rule(d - 1, gaussOrder, circleNodes);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double sr = std::sqrt(std::max(0.0, 1 - u[i] * u[i]));
    for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
      RVec v(d);
      v.head(d - 1) = sr * sub.nodes[j];
      v(d - 1) = u[i];
      s.nodes.push_back(v);
      s.weights.push_back(wu[i] * sub.weights[j]);
    }
  }
  return s;
}

namespace {

// integral of g over [0, R] by adaptive Gauss-Kronrod, error-checked
double radial(const std::function<double(double)>& g, double R, double tol) {
  double err = 0, l1 = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, R, 15, tol, &err, &l1);
  if (!(err <= 100 * tol * std::max(1.0, l1)) || !std::isfinite(v))
    throw Error(ErrorKind::Nonconvergence, "radial quadrature did not converge");
  return v;
}

// smallest R with int_R^inf r^{n-1} e^{-c r} dr below tol (n-1 covers the t factor)
double radial_cutoff(int n, double c, double tol) {
  double R = 1.0 / c;
  for (;;) {
    const double tail = boost::math::tgamma(double(n), c * R) / std::pow(c, n);
    if (tail < tol) return R;
    R += 1.0 / c;
  }
}

}  // namespace

HeatCoeffs heat_coeffs_numeric(int n, const LameParams& p, const RVec& kappas, const HeatQuadOptions& opt) {
  check_heat_args(n, p);
  if (kappas.size() != n - 1) throw Error(ErrorKind::Shape, "kappas must have n-1 entries");
  if (opt.threads < 1) throw Error(ErrorKind::Config, "threads must be >= 1");
  const DerivedConstants c = derive_constants(p);
  const double cmin = std::min(c.speeds[0], c.speeds[2]);
  const double R = radial_cutoff(n, cmin, opt.tailTol * 1e-2);
  const double norm = std::pow(2 * kPi, n - 1);

  const SphereRule rule = sphere_rule(n - 1, opt.angularOrder, opt.circleNodes);
  double vol = 0;
  for (double w : rule.weights) vol += w;

  HeatCoeffs out;
  out.angularNodes = static_cast<int>(rule.nodes.size());
  out.radialMax = R;

  const auto g0 = [&](double r) { return std::pow(r, n - 2) * heat_trace_psi1(n, p, r, 1.0); };
  out.a0 = vol * radial(g0, R, opt.radialTol) / norm;

  if (kappas.cwiseAbs().maxCoeff() == 0.0) return out;

  std::vector<double> part(rule.nodes.size(), 0.0);
  std::vector<std::exception_ptr> errs(rule.nodes.size());
  auto work = [&](std::size_t i) {
    try {
      const RVec& dir = rule.nodes[i];
      const auto g1 = [&](double r) {
        return std::pow(r, n - 2) * heat_trace_psi2(n, p, kappas, RVec(r * dir), 1.0);
      };
      part[i] = rule.weights[i] * radial(g1, R, opt.radialTol);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  };
  const std::size_t N = rule.nodes.size();
  const std::size_t T = std::min<std::size_t>(opt.threads, N);
  if (T <= 1) {
    for (std::size_t i = 0; i < N; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < T; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < N; i += T) work(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  out.a1 = pairwise_sum(part.data(), part.size()) / norm;
  return out;
}

HeatTotals total_heat_coefficients(const Geometry& g, int n, const LameParams& p) {
  check_heat_args(n, p);
  HeatTotals h;
  const double a0 = a0_density(n, p), a1 = a1_density(n, p), a1c = a1_density_chain(n, p);
  double vol = 0, kint = 0;
  switch (g.kind) {
    case Geometry::Kind::Circle:
      if (n != 2) throw Error(ErrorKind::Config, "circle geometry needs n = 2");
      [[fallthrough]];
    case Geometry::Kind::Sphere:
      if (!(g.R > 0)) throw Error(ErrorKind::Config, "radius must be positive");
      vol = sphere_volume(n - 1) * std::pow(g.R, n - 1);
      kint = vol * (n - 1) / g.R;
      break;
    case Geometry::Kind::Points:
      if (g.points.empty()) throw Error(ErrorKind::Config, "empty geometry");
      for (const auto& s : g.points) {
        if (!(s.weight > 0)) throw Error(ErrorKind::Config, "boundary weights must be positive");
        if (s.kappas.size() != n - 1) throw Error(ErrorKind::Shape, "point kappas need n-1 entries");
        vol += s.weight;
        kint += s.weight * s.kappas.sum();
      }
      break;
  }
  h.boundaryVolume = vol;
  h.A0 = a0 * vol;
  h.A1 = a1 * kint;
  h.A1Chain = a1c * kint;
  h.weylSlope = h.A0 / boost::math::tgamma(double(n));
  const double l = p.lambda, m = p.mu;
  h.weylSlopePrinted = sphere_volume(n - 2) / ((n - 1) * std::pow(m, n - 1)) *
                       ((1 + std::pow((l + 3 * m) / (l + m), n - 1)) / std::pow(2.0, n - 1) + (n - 2)) * vol;
  return h;
}

}  // namespace edtn

namespace edtn {

std::vector<ResidueRow> residue_table(const LameParams& p, double x, double t) {
  require_heat(p);
  const double l = p.lambda, m = p.mu;
  const double a = m * x;
  const double d = 2 * m * (l + 2 * m) / (l + 3 * m), b = d * x;
  const double c = 2 * m * (l + m) / (l + 3 * m);
  const double L = l + 3 * m;
  const auto E = [](double v) { return std::exp(v); };
  const auto om = [=](cplx z) { return omega_printed(x, z, p); };
  const auto W = [=](cplx z) { return 1.0 - om(z) * x * x; };
  const double e2 = E(-2 * m * x * t), ec = E(-c * x * t), ed = E(-d * x * t), em = E(-m * x * t);
  std::vector<ResidueRow> rows;
  rows.push_back({"1/(a-tau)^2", [=](cplx z) { return 1.0 / ((a - z) * (a - z)); }, -t * em});
  rows.push_back({"W^2/((b-tau)^2 (a-tau)^2)",
                  [=](cplx z) { return std::pow(W(z), 2) / (std::pow(b - z, 2) * std::pow(a - z, 2)); },
                  -L * L * (2 * x * t * m * m + 3 * m + l) / (32 * std::pow(m, 6) * std::pow(x, 3)) * e2 +
                      L * L * (-2 * x * t * m * m + 3 * m + l) / (32 * std::pow(m, 6) * std::pow(x, 3)) * ec});
  rows.push_back({"1/(b-tau)^2", [=](cplx z) { return 1.0 / ((b - z) * (b - z)); }, -t * ed});
  rows.push_back({"W/((b-tau)^3 (a-tau))", [=](cplx z) { return W(z) / (std::pow(b - z, 3) * (a - z)); },
                  std::pow(L, 3) / (16 * std::pow(m, 6) * std::pow(x, 3)) * e2 -
                      std::pow(L, 3) / (16 * std::pow(m, 6) * std::pow(x, 3)) * ec +
                      t * L * L / (4 * std::pow(m, 4) * x * x) * ed});
  rows.push_back({"W^2/((b-tau)^4 (a-tau)^2)",
                  [=](cplx z) { return std::pow(W(z), 2) / (std::pow(b - z, 4) * std::pow(a - z, 2)); },
                  -std::pow(L, 4) * (2 * x * t * m * m + 9 * m + 3 * l) / (128 * std::pow(m, 10) * std::pow(x, 5)) * e2 +
                      std::pow(L, 4) * (-2 * x * t * m * m + 9 * m + 3 * l) / (128 * std::pow(m, 10) * std::pow(x, 5)) * ec -
                      t * std::pow(L, 4) / (16 * std::pow(m, 8) * std::pow(x, 4)) * ed});
  rows.push_back({"omega^2/(a-tau)^2", [=](cplx z) { return om(z) * om(z) / ((a - z) * (a - z)); },
                  (2 * l + 2 * m + m * m * x * t - l * m * x * t) / (m * std::pow(x, 5) * (l - m)) * em +
                      (-2 * x * t * m * m - 5 * m + l) / (8 * m * m * std::pow(x, 5)) * e2 -
                      (l * l + 2 * x * t * l * m * m + 10 * l * m - 2 * x * t * std::pow(m, 3) + 21 * m * m) /
                          (8 * m * m * std::pow(x, 5) * (l - m)) * ec});
  rows.push_back({"omega/(a-tau)^2", [=](cplx z) { return om(z) / ((a - z) * (a - z)); },
                  (l + m + m * m * x * t - l * m * x * t) / (m * std::pow(x, 3) * (l - m)) * em -
                      1 / (2 * m * std::pow(x, 3)) * e2 - L / (2 * std::pow(x, 3) * (l - m) * m) * ec});
  rows.push_back({"W^2/((b-tau) (a-tau)^2)",
                  [=](cplx z) { return std::pow(W(z), 2) / ((b - z) * std::pow(a - z, 2)); },
                  t * L / (8 * m * m * x) * e2 - t * L / (8 * m * m * x) * ec});
  rows.push_back({"W/((b-tau)^2 (a-tau))", [=](cplx z) { return W(z) / (std::pow(b - z, 2) * (a - z)); },
                  -L * L / (8 * std::pow(m, 4) * x * x) * e2 - L * L / (8 * std::pow(m, 4) * x * x) * ec +
                      L * L / (4 * std::pow(m, 4) * x * x) * ed});
  rows.push_back({"W^2/((b-tau)^3 (a-tau)^2)",
                  [=](cplx z) { return std::pow(W(z), 2) / (std::pow(b - z, 3) * std::pow(a - z, 2)); },
                  std::pow(L, 3) * (x * t * m * m + 3 * m + l) / (32 * std::pow(m, 8) * std::pow(x, 4)) * e2 +
                      std::pow(L, 3) * (-x * t * m * m + 3 * m + l) / (32 * std::pow(m, 8) * std::pow(x, 4)) * ec -
                      std::pow(L, 4) / (16 * std::pow(m, 8) * std::pow(x, 4)) * ed});
  return rows;
}

std::vector<ResidueRow> psi1_term_table(int n, const LameParams& p, double x, double t) {
  require_heat(p);
  const double l = p.lambda, m = p.mu;
  const double d = 2 * m * (l + 2 * m) / (l + 3 * m);
  const double c = 2 * m * (l + m) / (l + 3 * m);
  const double em = std::exp(-m * x * t), e2 = std::exp(-2 * m * x * t);
  const double ec = std::exp(-c * x * t), ed = std::exp(-d * x * t);
  const double L = l + 3 * m;
  const double closed[7] = {
      -(n - 1) * em,
      -ed,
      (l + m) / (4 * m) * ec - (l + m) / (4 * m) * e2,
      -L / (4 * m) * ec + (l - m) / (4 * m) * e2 + em,
      4 * m * m * (L + m * m * x * t + l * m * x * t) / (L * (l + m) * (l + m)) * ed - 4 * m * m / ((l + m) * (l + m)) * em,
      -m * x * t * (l + m) / L * ed + (l + m) / (4 * m) * ec - (l + m) / (4 * m) * e2,
      (l - m) * (L + m * m * x * t + l * m * x * t) / ((l + m) * (l + m)) * ed - L / (4 * m) * ec +
          (l - m) / (4 * m) * e2 + 4 * m * m / ((l + m) * (l + m)) * em};
  std::vector<ResidueRow> rows;
  for (int i = 0; i < 7; ++i)
    rows.push_back({"term " + std::to_string(i + 1),
                    [=](cplx z) { return trace_psi1_terms(n, x, z, p)[i]; }, closed[i]});
  return rows;
}

}  // namespace edtn
