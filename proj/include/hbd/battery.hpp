#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hbd {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;  // 0 for exact checks that pass
  double seconds = 0.0;
  std::string detail;
};

struct BatteryOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;  // float checks; also the rank threshold while they run
};

/// The ten acceptance checks, sorted by name. Deterministic for a fixed seed.
std::vector<CheckResult> run_battery(const BatteryOptions& opt);

}  // namespace hbd
