#pragma once

#include <map>
#include <string>
#include <vector>

#include "edtn/core.hpp"

namespace edtn::cli {

// [section] / key = value text with '#' comments; every key must be known
class Config {
public:
  Config();  // all defaults

  // throws Error(Config) with a line number on any malformed line
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin = "<text>");
  // "section.key=value"
  void apply_override(const std::string& assignment);

  const std::string& raw(const std::string& section, const std::string& key) const;
  double num(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  bool flag(const std::string& section, const std::string& key) const;
  // comma separated reals; empty string gives an empty vector
  std::vector<double> list(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& values() const { return v_; }

private:
  void set(const std::string& section, const std::string& key, const std::string& value, const std::string& where);
  std::map<std::string, std::map<std::string, std::string>> v_;
};

double parse_double(const std::string& s, const std::string& what);

}  // namespace edtn::cli
