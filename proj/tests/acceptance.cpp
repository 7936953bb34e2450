// Runs the ten acceptance checks and prints one PASS/FAIL line per check.
#include <cstdio>
#include <cstdlib>

#include "hbd/battery.hpp"

int main(int argc, char** argv) {
  hbd::BatteryOptions opt;
  if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (const hbd::CheckResult& r : hbd::run_battery(opt)) {
    std::printf("%s %s  max_dev=%.3g  %.2fs", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_deviation, r.seconds);
    if (!r.detail.empty()) std::printf("  %s", r.detail.c_str());
    std::printf("\n");
    failed += !r.pass;
  }
  std::printf("%d of 10 checks failed\n", failed);
  return failed == 0 ? 0 : 1;
}
