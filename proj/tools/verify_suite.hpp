#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace edtn::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;        // one line, the numbers behind the verdict
  double seconds = 0;        // wall time, not written to reports
  double limitSeconds = 0;
  nlohmann::json metrics;    // deterministic numbers only
};

// ids 1..10; empty selection runs all
std::vector<CriterionResult> run_acceptance(int threads, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& onDone = {});

std::string format_line(const CriterionResult& r);

}  // namespace edtn::verify
