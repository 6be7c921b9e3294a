#include "regprod/error.hpp"

namespace regprod {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kDomain:
      return "domain";
    case ErrorKind::kPole:
      return "pole";
    case ErrorKind::kInvalidSequence:
      return "invalid-sequence";
    case ErrorKind::kBoundViolation:
      return "bound-violation";
    case ErrorKind::kNonconvergence:
      return "nonconvergence";
    case ErrorKind::kPrecision:
      return "precision";
    case ErrorKind::kRouteInapplicable:
      return "route-inapplicable";
    case ErrorKind::kBranch:
      return "branch";
    case ErrorKind::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace regprod
