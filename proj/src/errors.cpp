#include "hbd/errors.hpp"

namespace hbd {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::NotInCompactDual: return "NotInCompactDual";
    case Errc::NotInPeriodDomain: return "NotInPeriodDomain";
    case Errc::NotNilpotent: return "NotNilpotent";
    case Errc::NotInfinitesimallySymplectic: return "NotInfinitesimallySymplectic";
    case Errc::NotDirectSum: return "NotDirectSum";
    case Errc::IndexTooHigh: return "IndexTooHigh";
    case Errc::SolveFailed: return "SolveFailed";
    case Errc::NotRSplit: return "NotRSplit";
    case Errc::NoTriple: return "NoTriple";
    case Errc::CheckFailed: return "CheckFailed";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotAnOrbit: return "NotAnOrbit";
    case Errc::WrongParity: return "WrongParity";
    case Errc::NotSymplectic: return "NotSymplectic";
    case Errc::BadParam: return "BadParam";
    case Errc::ScheduleViolation: return "ScheduleViolation";
    case Errc::Singular: return "Singular";
  }
  return "Unknown";
}

}  // namespace hbd
