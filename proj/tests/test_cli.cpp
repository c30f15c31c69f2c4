#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::path(EDTN_TEST_WORKDIR);

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path fresh(const std::string& name) {
  const fs::path d = work / name;
  fs::remove_all(d);
  return d;
}

int run(const std::string& args) {
  const std::string cmd = std::string(EDTN_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path config(const std::string& name, const std::string& text) {
  fs::create_directories(work);
  const fs::path p = work / name;
  std::ofstream(p) << text;
  return p;
}

bool empty_or_missing(const fs::path& d) { return !fs::exists(d) || fs::is_empty(d); }

nlohmann::json report(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("malformed configs exit 2 and write nothing") {
  const char* bad[] = {
      "[params]\nlambda = 1\nthis line has no equals sign\n",
      "lambda = 1\n",
      "[params]\nlambda = 1\nlambda = 2\n",
      "[nosuch]\nx = 1\n",
      "[params]\nshear = 1\n",
      "[params]\nlambda = one\n",
      "[params\nlambda = 1\n",
      "[params]\nmu = -1\n",
      "[params]\nn = 2.5\n",
  };
  int i = 0;
  for (const char* text : bad) {
    INFO(text);
    const fs::path out = fresh("bad" + std::to_string(i));
    const fs::path cfg = config("bad" + std::to_string(i) + ".cfg", text);
    CHECK(run("symbols --config " + cfg.string() + " --out " + out.string()) == 2);
    CHECK(empty_or_missing(out));
    ++i;
  }
}

TEST_CASE("bad flags exit 2 and write nothing") {
  const fs::path out = fresh("badflags");
  CHECK(run("symbols --set params.lambda --out " + out.string()) == 2);
  CHECK(run("symbols --set lambda=1 --out " + out.string()) == 2);
  CHECK(run("symbols --threads 0 --out " + out.string()) == 2);
  CHECK(run("symbols --config /nonexistent/x.cfg --out " + out.string()) == 2);
  CHECK(run("frobnicate --out " + out.string()) == 2);
  CHECK(run("") == 2);
  CHECK(empty_or_missing(out));
}

TEST_CASE("symbols report carries the config echo and verdicts") {
  const fs::path out = fresh("sym");
  const fs::path cfg = config("sym.cfg", "# test\n[params]\nlambda = 2\nmu = 1\nn = 3\n[point]\nkappas = 1, 1\nxi = 1, 0\n");
  REQUIRE(run("symbols --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto r = report(out / "symbols.json");
  CHECK(r["command"] == "symbols");
  CHECK(r["config"]["params"]["lambda"] == "2");
  CHECK(r["config"]["point"]["xi"] == "1, 0");
  CHECK(r["status"] == "ok");
  CHECK(r["verdicts"].size() >= 3);
  // q0 (n,n) real part
  CHECK(r["q0"][2][2][0].get<double>() == doctest::Approx(1.28).epsilon(1e-12));
}

TEST_CASE("flag overrides beat the file") {
  const fs::path out = fresh("over");
  const fs::path cfg = config("over.cfg", "[params]\nlambda = 2\n");
  REQUIRE(run("symbols --config " + cfg.string() + " --set params.lambda=5 --threads 3 --out " + out.string()) == 0);
  const auto r = report(out / "symbols.json");
  CHECK(r["config"]["params"]["lambda"] == "5");
  CHECK(r["config"]["run"]["threads"] == "3");
}

TEST_CASE("heat-coeffs on the unit circle: A0 = 3, Weyl slope 3") {
  const fs::path out = fresh("hc");
  REQUIRE(run("heat-coeffs --out " + out.string()) == 0);
  const auto r = report(out / "heat_coeffs.json");
  CHECK(r["A0"].get<double>() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r["weylSlope"].get<double>() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r["A1_printed"].get<double>() == doctest::Approx(4.8125).epsilon(1e-14));
}

TEST_CASE("heat-coeffs on the unit circle reports A1 = 4.8125") {
  const fs::path out = fresh("hc2");
  REQUIRE(run("heat-coeffs --out " + out.string()) == 0);
  CHECK(report(out / "heat_coeffs.json")["A1"].get<double>() == doctest::Approx(4.8125).epsilon(1e-12));
}

TEST_CASE("a failed tolerance verdict exits 3 and still writes the report") {
  const fs::path out = fresh("tol");
  CHECK(run("heat-coeffs --set heat.numeric=true --set heat.tol=1e-30 --out " + out.string()) == 3);
  const auto r = report(out / "heat_coeffs.json");
  CHECK(r["status"] == "tolerance_failure");
}

TEST_CASE("counting past the certified range exits 4 and writes nothing") {
  const fs::path out = fresh("trunc");
  CHECK(run("weyl --set weyl.tau_max=1000 --set spectrum.validate=false --out " + out.string()) == 4);
  CHECK(empty_or_missing(out));
}

TEST_CASE("disk-spectrum CSV: header, 17 significant digits") {
  const fs::path out = fresh("ds");
  REQUIRE(run("disk-spectrum --set params.lambda=2 --set spectrum.K=30 --out " + out.string()) == 0);
  std::istringstream in(slurp(out / "disk_spectrum.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,branch,tau");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c2 = line.rfind(',');
    const std::string tau = line.substr(c2 + 1);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::strtod(tau.c_str(), nullptr));
    CHECK(tau == buf);
    ++rows;
  }
  CHECK(rows == 4 * 30 + 2);
  CHECK(report(out / "disk_spectrum.json")["verdicts"][0]["pass"] == true);
}

TEST_CASE("reports are byte-stable across runs") {
  const fs::path out = fresh("stable");
  const std::string args = "heat-trace --set spectrum.K=200 --set heat_trace.samples=7 --out " + out.string();
  REQUIRE(run(args) == 0);
  const std::string j1 = slurp(out / "heat_trace.json"), c1 = slurp(out / "heat_trace.csv");
  REQUIRE(run(args) == 0);
  CHECK(j1 == slurp(out / "heat_trace.json"));
  CHECK(c1 == slurp(out / "heat_trace.csv"));
  std::istringstream in(c1);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,S,A0_over_t,S_minus_A0_over_t,target_A1");

  const std::string a = "heat-coeffs --set params.n=3 --set geometry.kind=sphere --set heat.numeric=true";
  REQUIRE(run(a + " --threads 1 --out " + out.string()) == 0);
  const std::string h1 = slurp(out / "heat_coeffs.json");
  REQUIRE(run(a + " --threads 1 --out " + out.string()) == 0);
  CHECK(h1 == slurp(out / "heat_coeffs.json"));
}

TEST_CASE("weyl and recover on defaults") {
  const fs::path out = fresh("wr");
  CHECK(run("weyl --out " + out.string()) == 0);
  CHECK(slurp(out / "weyl.csv").rfind("tau,N,prediction,ratio\n", 0) == 0);
  CHECK(run("recover --set params.n=3 --set params.lambda=2 --set recover.kappas=0.3,0.7 --out " + out.string()) == 0);
  const auto r = report(out / "recover.json");
  CHECK(r["kappas_recovered"][0].get<double>() == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(r["kappas_recovered"][1].get<double>() == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("verify on a subset writes a report without timings") {
  const fs::path out = fresh("ver");
  CHECK(run("verify --set verify.criteria=1,2,4 --out " + out.string()) == 0);
  const std::string text = slurp(out / "verify.json");
  CHECK(text.find("seconds") == std::string::npos);
  CHECK(text.find("within_time_limit") == std::string::npos);
  CHECK(report(out / "verify.json")["criteria"].size() == 3);
}

TEST_CASE("verify on defaults exits 0") {
  const fs::path out = fresh("verall");
  CHECK(run("verify --out " + out.string()) == 0);
}
