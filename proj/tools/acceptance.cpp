#include <cstdio>
#include <cstdlib>

#include "criteria.hpp"

// One line per acceptance criterion; exit status 4 if any fails.
int main(int argc, char** argv) {
  using namespace wrenyi::app;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
  int failed = 0;
  for (int k = 1; k <= kCriteria; ++k) {
    const auto r = run_criterion(k, seed);
    if (!r.pass) ++failed;
    std::printf("%s [%d] %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", k, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", kCriteria - failed, kCriteria);
  return failed ? kAcceptanceFailure : kOk;
}
