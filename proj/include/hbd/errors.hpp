#pragma once

#include <stdexcept>
#include <string>

namespace hbd {

enum class Errc {
  AmbientMismatch,
  NotInCompactDual,
  NotInPeriodDomain,
  NotNilpotent,
  NotInfinitesimallySymplectic,
  NotDirectSum,
  IndexTooHigh,
  SolveFailed,
  NotRSplit,
  NoTriple,
  CheckFailed,
  BudgetExhausted,
  NotAnOrbit,
  WrongParity,
  NotSymplectic,
  BadParam,
  ScheduleViolation,
  Singular,
};

const char* errc_name(Errc code);

// Math-domain failure. The CLI maps these to exit code 3 and prints name().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }
  const char* name() const noexcept { return errc_name(code_); }

 private:
  Errc code_;
};

}  // namespace hbd
