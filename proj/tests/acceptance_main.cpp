// Acceptance gate: runs the ten end-to-end criteria and prints one line per
// criterion.  Exit status is the number of failing criteria, so a clean run
// exits zero.  `--criterion K` runs a single criterion (used by the test
// driver to report them separately).

#include <cstdio>
#include <cstring>
#include <string>

#include "dncover/verify.hpp"

namespace {

void print_line(const dncover::CriterionResult& r) {
  std::printf("[%2d] %s  %-58s %7.2fs  %s\n", r.number, r.pass ? "PASS" : "FAIL", r.name.c_str(),
              r.seconds, r.detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 10) {
        std::fprintf(stderr, "criterion number must be 1..10\n");
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--criterion K]\n", argv[0]);
      return 2;
    }
  }

  dncover::VerifyContext ctx;
  int failures = 0;
  if (only) {
    auto r = dncover::verify_criterion(only, ctx);
    print_line(r);
    return r.pass ? 0 : 1;
  }
  for (int k = 1; k <= 10; ++k) {
    auto r = dncover::verify_criterion(k, ctx);
    print_line(r);
    if (!r.pass) ++failures;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
