// edtn: batch front end. Everything is computed before any file is written.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "edtn/heattrace.hpp"
#include "edtn/recovery.hpp"
#include "edtn/spectrum.hpp"
#include "edtn/symbols.hpp"
#include "verify_suite.hpp"

using nlohmann::ordered_json;
using namespace edtn;
using edtn::cli::Config;

namespace {

enum Exit { kOk = 0, kConfig = 2, kTolerance = 3, kNonconvergence = 4 };

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Config:
    case ErrorKind::Shape:
    case ErrorKind::Basis:
    case ErrorKind::PoleProximity:
      return kConfig;
    case ErrorKind::Nonconvergence:
    case ErrorKind::Truncation:
      return kNonconvergence;
    default:
      return kTolerance;
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// a report under construction; files are only staged here
struct Output {
  ordered_json report;
  ordered_json verdicts = ordered_json::array();
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  bool gatingFailure = false;

  // gating verdicts decide the exit code; reference ones only record a comparison
  void verdict(const std::string& name, double value, double tol, bool gating, const std::string& note = "") {
    const bool pass = std::isfinite(value) && value <= tol;
    ordered_json v;
    v["name"] = name;
    v["value"] = value;
    v["tol"] = tol;
    v["pass"] = pass;
    v["gating"] = gating;
    if (!note.empty()) v["note"] = note;
    verdicts.push_back(v);
    if (gating && !pass) gatingFailure = true;
  }
};

ordered_json cjson(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json mjson(const CMat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json r = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(cjson(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

ordered_json vjson(const RVec& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVec to_vec(const std::vector<double>& v) { return Eigen::Map<const RVec>(v.data(), (Eigen::Index)v.size()); }

struct Common {
  LameParams p;
  int n = 2;
  int threads = 1;
};

Common common(const Config& c) {
  Common m;
  m.p.lambda = c.num("params", "lambda");
  m.p.mu = c.num("params", "mu");
  m.n = c.integer("params", "n");
  m.threads = c.integer("run", "threads");
  if (m.n < 2 || m.n > 8) throw Error(ErrorKind::Config, "params.n must be in 2..8");
  if (m.threads < 1 || m.threads > 256) throw Error(ErrorKind::Config, "run.threads must be in 1..256");
  require_symbols(m.p);
  return m;
}

RVec sized(const Config& c, const std::string& s, const std::string& k, int len, double fill) {
  std::vector<double> v = c.list(s, k);
  if (v.empty()) v.assign(len, fill);
  if ((int)v.size() != len)
    throw Error(ErrorKind::Config, s + "." + k + " needs " + std::to_string(len) + " entries (n-1)");
  return to_vec(v);
}

// symbols at the origin of a normal-form chart
void cmd_symbols(const Config& c, Output& o) {
  const Common m = common(c);
  const RVec kap = sized(c, "point", "kappas", m.n - 1, 1.0);
  const RVec xi = sized(c, "point", "xi", m.n - 1, 1.0);
  if (xi.norm() == 0) throw Error(ErrorKind::Config, "point.xi must be nonzero");
  const auto pt = BoundaryPoint::origin(kap);
  const auto dc = derive_constants(m.p);
  const auto dtn = dtn_symbols(pt, xi, m.p);
  const auto q1s = q1(pt, xi, m.p);
  const auto q0s = q0_origin(kap, xi, m.p);
  const auto op = sylvester_operator(pt, xi, m.p);
  const auto E1 = E1_origin(kap, xi, m.p);
  const CMat q0dense = solve_sylvester_dense(op, E1.value);

  const double rq1 = verify_q1(pt, xi, m.p);
  const double rsyl = sylvester_residual(op, q0s.value, E1.value);
  const double rdense = max_abs(q0s.value - q0dense) / std::max(1.0, max_abs(q0dense));
  const CMat printed = q0_origin_printed_table(kap, xi, m.p, dc.sTilde);
  const double gapPrinted = max_abs(q0s.value - printed) / std::max(1.0, max_abs(q0s.value));

  ordered_json& r = o.report;
  r["constants"] = {{"d1", dc.d1Chain}, {"d2", dc.d2Chain}, {"d1_printed", dc.d1}, {"d2_printed", dc.d2},
                    {"speeds", dc.speeds}};
  r["q1"] = mjson(q1s.value);
  r["q0"] = mjson(q0s.value);
  r["p1"] = mjson(dtn.first.value);
  r["p0"] = mjson(dtn.second.value);
  o.verdict("q1_principal_equation_relative", rq1, 1e-10, true);
  o.verdict("q0_sylvester_residual", rsyl, 1e-10, true);
  o.verdict("q0_closed_vs_dense_solve", rdense, 1e-8, true);
  o.verdict("q0_vs_printed_table", gapPrinted, 1e-10, false, "long printed coefficient table");
}

Geometry geometry(const Config& c, int n) {
  Geometry g;
  const std::string kind = c.raw("geometry", "kind");
  g.R = c.num("geometry", "R");
  if (kind == "circle") {
    g.kind = Geometry::Kind::Circle;
  } else if (kind == "sphere") {
    g.kind = Geometry::Kind::Sphere;
  } else if (kind == "points") {
    g.kind = Geometry::Kind::Points;
    // w:k1,k2;w:k1,k2
    std::stringstream ss(c.raw("geometry", "points"));
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw Error(ErrorKind::Config, "geometry.points entries look like w:k1,k2");
      Geometry::Sample s;
      s.weight = cli::parse_double(item.substr(0, colon), "geometry.points weight");
      std::vector<double> ks;
      std::stringstream ks_in(item.substr(colon + 1));
      std::string k;
      while (std::getline(ks_in, k, ',')) ks.push_back(cli::parse_double(k, "geometry.points kappa"));
      s.kappas = to_vec(ks);
      if (s.kappas.size() != n - 1) throw Error(ErrorKind::Config, "geometry.points kappas need n-1 entries");
      g.points.push_back(s);
    }
  } else {
    throw Error(ErrorKind::Config, "geometry.kind must be circle, sphere or points");
  }
  return g;
}

void cmd_heat_coeffs(const Config& c, Output& o) {
  const Common m = common(c);
  require_heat(m.p);
  const Geometry g = geometry(c, m.n);
  const HeatTotals h = total_heat_coefficients(g, m.n, m.p);
  ordered_json& r = o.report;
  r["A0"] = h.A0;
  r["A1"] = h.A1Chain;
  r["A1_printed"] = h.A1;
  r["weylSlope"] = h.weylSlope;
  r["weylSlope_printed"] = h.weylSlopePrinted;
  r["boundaryVolume"] = h.boundaryVolume;
  r["a0_density"] = a0_density(m.n, m.p);
  r["a1_density"] = a1_density_chain(m.n, m.p);
  r["a1_density_printed"] = a1_density(m.n, m.p);

  if (c.flag("heat", "numeric")) {
    const RVec kap = sized(c, "heat", "kappas", m.n - 1, 1.0);
    const double tol = c.num("heat", "tol");
    HeatQuadOptions q;
    q.threads = m.threads;
    const HeatCoeffs nc = heat_coeffs_numeric(m.n, m.p, kap, q);
    const double s = kap.sum();
    const double a0c = a0_density(m.n, m.p), a1c = a1_density_chain(m.n, m.p) * s,
                 a1p = a1_density(m.n, m.p) * s;
    auto rel = [](double x, double ref) { return std::abs(x - ref) / std::max(1e-300, std::abs(ref)); };
    auto gap = [](double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); };
    r["numeric"] = {{"kappas", vjson(kap)}, {"a0", nc.a0}, {"a1", nc.a1}, {"angularNodes", nc.angularNodes}};
    o.verdict("a0_numeric_vs_closed", rel(nc.a0, a0c), tol, true);
    o.verdict("a1_numeric_vs_closed", gap(nc.a1, a1c), tol, true);
    o.verdict("a1_numeric_vs_printed", gap(nc.a1, a1p), tol, false, "printed a1 density");
  }
  o.verdict("A1_vs_printed", std::abs(h.A1Chain - h.A1) / std::max(1.0, std::abs(h.A1)), 1e-6, false,
            "printed a1 density");
}

DiskSpectrum spectrum(const Config& c, const Common& m) {
  if (m.n != 2) throw Error(ErrorKind::Config, "disk commands need params.n = 2");
  require_heat(m.p);
  const int K = c.integer("spectrum", "K");
  const double R = c.num("spectrum", "R");
  if (K < 1 || K > 100000) throw Error(ErrorKind::Config, "spectrum.K must be in 1..100000");
  if (!(R > 0)) throw Error(ErrorKind::Config, "spectrum.R must be positive");
  return disk_spectrum(m.p, R, K, c.flag("spectrum", "validate"));
}

void spectrum_summary(const DiskSpectrum& s, Output& o) {
  o.report["spectrum"] = {{"R", s.R}, {"K", s.K}, {"eigenvalues", s.entries.size()},
                          {"oracleError", s.oracleError}};
}

void cmd_disk_spectrum(const Config& c, Output& o) {
  const Common m = common(c);
  const DiskSpectrum s = spectrum(c, m);
  std::string csv = "k,branch,tau\n";
  for (const auto& e : s.entries) csv += std::to_string(e.k) + "," + std::to_string(e.branch) + "," + g17(e.tau) + "\n";
  o.files.emplace_back("disk_spectrum.csv", csv);
  spectrum_summary(s, o);
  o.report["lowest"] = ordered_json::array();
  for (size_t i = 0; i < std::min<size_t>(8, s.entries.size()); ++i)
    o.report["lowest"].push_back({{"k", s.entries[i].k}, {"branch", s.entries[i].branch}, {"tau", s.entries[i].tau}});
  if (s.oracleError >= 0) o.verdict("collocation_oracle_gap", s.oracleError, 1e-6, true);
}

void cmd_heat_trace(const Config& c, Output& o) {
  const Common m = common(c);
  const DiskSpectrum s = spectrum(c, m);
  const int samples = c.integer("heat_trace", "samples");
  const double tol = c.num("heat_trace", "tol");
  if (samples < 2 || samples > 10000) throw Error(ErrorKind::Config, "heat_trace.samples must be in 2..10000");
  Geometry g;
  g.R = s.R;
  const HeatTotals h = total_heat_coefficients(g, 2, m.p);
  const double tmin = min_certified_t(m.p, s.R, s.K), tmax = 10 * tmin;
  std::string csv = "t,S,A0_over_t,S_minus_A0_over_t,target_A1\n";
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = tmin * std::pow(tmax / tmin, double(i) / (samples - 1));
    const PartialSum ps = heat_trace_partial_sum(s, t);
    worst = std::max(worst, std::abs(ps.value - disk_heat_trace_exact(m.p, s.R, t)) / ps.value);
    csv += g17(t) + "," + g17(ps.value) + "," + g17(h.A0 / t) + "," + g17(ps.value - h.A0 / t) + "," +
           g17(h.A1) + "\n";
  }
  o.files.emplace_back("heat_trace.csv", csv);
  const A1Fit f = fit_a1(s, h.A0, samples);
  spectrum_summary(s, o);
  o.report["A0"] = h.A0;
  o.report["A1"] = h.A1Chain;
  o.report["A1_printed"] = h.A1;
  o.report["fit"] = {{"a", f.a}, {"b", f.b}, {"tmin", f.tmin}, {"tmax", f.tmax}, {"samples", f.samples}};
  o.verdict("partial_sum_vs_closed_series", worst, 1e-8, true);
  if (s.oracleError >= 0) o.verdict("collocation_oracle_gap", s.oracleError, 1e-6, true);
  o.verdict("fit_A1_vs_closed", std::abs(f.a - h.A1Chain) / std::max(1.0, std::abs(h.A1Chain)), tol, false,
            "finite-t fit bias is of order tmin");
  o.verdict("fit_A1_vs_printed", std::abs(f.a - h.A1) / std::max(1.0, std::abs(h.A1)), tol, false,
            "printed A1 target");
}

void cmd_weyl(const Config& c, Output& o) {
  const Common m = common(c);
  const DiskSpectrum s = spectrum(c, m);
  const double a = c.num("weyl", "tau_min"), b = c.num("weyl", "tau_max"), step = c.num("weyl", "step");
  const double tol = c.num("weyl", "tol");
  if (!(a > 0 && b > a && step > 0) || (b - a) / step > 1e6)
    throw Error(ErrorKind::Config, "weyl needs 0 < tau_min < tau_max and a positive step");
  Geometry g;
  g.R = s.R;
  const HeatTotals h = total_heat_coefficients(g, 2, m.p);
  std::string csv = "tau,N,prediction,ratio\n";
  double worst = 0;
  const long steps = std::lround(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= steps; ++i) {
    const double tau = a + i * step;
    const long N = counting_function(s, tau);
    const double pred = h.weylSlope * tau;
    worst = std::max(worst, std::abs(N / pred - 1));
    csv += g17(tau) + "," + std::to_string(N) + "," + g17(pred) + "," + g17(N / pred) + "\n";
  }
  o.files.emplace_back("weyl.csv", csv);
  spectrum_summary(s, o);
  o.report["weylSlope"] = h.weylSlope;
  o.report["weylSlope_printed"] = h.weylSlopePrinted;
  o.report["reliableLimit"] = counting_reliable_limit(s);
  o.verdict("counting_vs_weyl", worst, tol, true);
  o.verdict("slope_vs_printed", std::abs(h.weylSlope - h.weylSlopePrinted) / h.weylSlope, tol, false,
            "printed coefficient omits the (2 pi)^(n-1) normalisation");
}

void cmd_recover(const Config& c, Output& o) {
  const Common m = common(c);
  const RVec kap = sized(c, "recover", "kappas", m.n - 1, 1.0);
  const double tol = c.num("recover", "tol");
  const auto samples = forward_p0nn_samples(m.n, m.p, kap);
  const CurvatureEstimate e = recover_curvatures(samples, m.n, m.p);
  const double err = (e.kappas - kap).cwiseAbs().maxCoeff() / std::max(1.0, kap.cwiseAbs().maxCoeff());
  const auto [A, B] = recovery_coefficients(m.p);
  const auto [Ap, Bp] = recovery_coefficients(m.p, DSource::Printed);
  ordered_json& r = o.report;
  r["samples"] = samples;
  r["kappas_true"] = vjson(kap);
  r["kappas_recovered"] = vjson(e.kappas);
  r["sumKappa"] = e.sumKappa;
  r["map"] = {{"A", A}, {"B", B}, {"condition", e.conditioning}};
  r["map_printed"] = {{"A", Ap}, {"B", Bp}, {"condition", recovery_condition(m.n, m.p, DSource::Printed)}};
  r["nondegeneracy_cubic"] = m.p.nondegeneracy_cubic(m.n);
  o.verdict("round_trip_error", err, tol, true);
  o.verdict("diagonal_consistency", e.consistency, 1e-8, true);
}

void cmd_verify(const Config& c, Output& o) {
  const Common m = common(c);
  std::vector<int> only;
  for (double v : c.list("verify", "criteria")) {
    if (v != std::floor(v) || v < 1 || v > 10) throw Error(ErrorKind::Config, "verify.criteria entries must be 1..10");
    only.push_back(int(v));
  }
  const auto results = verify::run_acceptance(m.threads, only, [](const verify::CriterionResult& r) {
    std::cerr << verify::format_line(r) << "\n";
  });
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    nlohmann::json metrics = r.metrics;
    metrics.erase("within_time_limit");  // wall clock, kept off the report
    arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"metrics", metrics}});
    if (!r.pass) o.gatingFailure = true;
  }
  o.report["criteria"] = arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elastic Dirichlet-to-Neumann symbols, heat invariants and disk spectra"};
  app.require_subcommand(1, 1);
  std::string configPath, outDir;
  std::vector<std::string> sets;
  int threads = 0;
  app.add_option("--config", configPath, "key = value config file with [sections]");
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  app.add_option("--out", outDir, "output directory (overrides run.out)");
  auto* threadsOpt = app.add_option("--threads", threads, "worker threads (overrides run.threads)");

  using Fn = void (*)(const Config&, Output&);
  const std::vector<std::tuple<std::string, std::string, Fn>> cmds = {
      {"symbols", "q1, q0, p1, p0 and residuals at a boundary point", cmd_symbols},
      {"verify", "acceptance suite", cmd_verify},
      {"heat-coeffs", "A0, A1 and the Weyl slope for a geometry", cmd_heat_coeffs},
      {"disk-spectrum", "disk eigenvalues as CSV", cmd_disk_spectrum},
      {"heat-trace", "spectral heat trace against A0/t and A1", cmd_heat_trace},
      {"weyl", "counting function against the Weyl prediction", cmd_weyl},
      {"recover", "curvature round trip", cmd_recover},
  };
  for (const auto& [name, help, fn] : cmds) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  std::string command;
  Fn fn = nullptr;
  for (const auto& [name, help, f] : cmds)
    if (app.got_subcommand(name)) command = name, fn = f;

  Config cfg;
  Output out;
  try {
    if (!configPath.empty()) cfg.load_file(configPath);
    for (const auto& s : sets) cfg.apply_override(s);
    if (threadsOpt->count()) cfg.apply_override("run.threads=" + std::to_string(threads));
    if (!outDir.empty()) cfg.apply_override("run.out=" + outDir);
    fn(cfg, out);
  } catch (const Error& e) {
    std::cerr << "edtn " << command << ": " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "edtn " << command << ": " << e.what() << "\n";
    return kTolerance;
  }

  ordered_json report;
  report["command"] = command;
  report["config"] = cfg.values();
  for (auto& [k, v] : out.report.items()) report[k] = v;
  if (!out.verdicts.empty()) report["verdicts"] = out.verdicts;
  report["status"] = out.gatingFailure ? "tolerance_failure" : "ok";

  std::string stem = command;
  std::replace(stem.begin(), stem.end(), '-', '_');
  out.files.emplace_back(stem + ".json", report.dump(2) + "\n");
  try {
    const std::filesystem::path dir = cfg.raw("run", "out");
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : out.files) {
      std::ofstream f(dir / name, std::ios::binary);
      f << content;
      if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
      std::cout << (dir / name).string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "edtn " << command << ": " << e.what() << "\n";
    return kConfig;
  }
  return out.gatingFailure ? kTolerance : kOk;
}
