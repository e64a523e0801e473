#include "olg/errors.hpp"

namespace olg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Branch: return "branch";
    case ErrorKind::Nonexistence: return "nonexistence";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::InfeasibleCredit: return "infeasible_credit";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Horizon: return "horizon";
    case ErrorKind::Applicability: return "applicability";
  }
  return "unknown";
}

}  // namespace olg
