#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace edtn::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

}  // namespace

Config::Config() {
  v_ = {
      {"run", {{"threads", "1"}, {"out", "."}}},
      {"params", {{"lambda", "1"}, {"mu", "1"}, {"n", "2"}}},
      {"point", {{"kappas", ""}, {"xi", ""}}},
      {"geometry", {{"kind", "circle"}, {"R", "1"}, {"points", ""}}},
      {"heat", {{"numeric", "false"}, {"kappas", ""}, {"tol", "1e-6"}}},
      {"spectrum", {{"R", "1"}, {"K", "600"}, {"validate", "true"}}},
      {"heat_trace", {{"samples", "20"}, {"tol", "0.05"}}},
      {"weyl", {{"tau_min", "50"}, {"tau_max", "200"}, {"step", "0.5"}, {"tol", "0.02"}}},
      {"recover", {{"kappas", ""}, {"tol", "1e-9"}}},
      {"verify", {{"criteria", ""}}},
  };
}

void Config::set(const std::string& section, const std::string& key, const std::string& value,
                 const std::string& where) {
  auto s = v_.find(section);
  if (s == v_.end()) fail(where + ": unknown section [" + section + "]");
  auto k = s->second.find(key);
  if (k == s->second.end()) fail(where + ": unknown key '" + key + "' in [" + section + "]");
  k->second = value;
}

void Config::load_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line, section;
  int no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++no;
    const std::string where = origin + ":" + std::to_string(no);
    const auto hash = line.find('#');
    const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) fail(where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!v_.count(section)) fail(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(where + ": expected key = value");
    if (section.empty()) fail(where + ": key outside any section");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) fail(where + ": empty key");
    const std::string full = section + "." + key;
    if (seen.count(full)) fail(where + ": duplicate key " + full + " (first on line " + std::to_string(seen[full]) + ")");
    seen[full] = no;
    set(section, key, trim(s.substr(eq + 1)), where);
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  load_text(ss.str(), path);
}

void Config::apply_override(const std::string& a) {
  const auto eq = a.find('=');
  const auto dot = a.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    fail("override must look like section.key=value: " + a);
  set(trim(a.substr(0, dot)), trim(a.substr(dot + 1, eq - dot - 1)), trim(a.substr(eq + 1)), "--set " + a);
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  return v_.at(section).at(key);
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) fail(what + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) fail(what + ": not a finite number: '" + s + "'");
  return v;
}

double Config::num(const std::string& section, const std::string& key) const {
  return parse_double(raw(section, key), section + "." + key);
}

int Config::integer(const std::string& section, const std::string& key) const {
  const std::string& s = raw(section, key);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || v < -1000000000 || v > 1000000000)
    fail(section + "." + key + ": not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool Config::flag(const std::string& section, const std::string& key) const {
  const std::string& s = raw(section, key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(section + "." + key + ": expected true/false, got '" + s + "'");
}

std::vector<double> Config::list(const std::string& section, const std::string& key) const {
  std::vector<double> out;
  const std::string& s = raw(section, key);
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), section + "." + key));
  return out;
}

}  // namespace edtn::cli
