// One line per acceptance criterion; nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>

#include "verify_suite.hpp"

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : 1;
  int failed = 0;
  edtn::verify::run_acceptance(threads, {}, [&](const edtn::verify::CriterionResult& r) {
    std::printf("%s\n", edtn::verify::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
