#include "fbm/error.hpp"

namespace fbm {

const char* error_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain_error";
    case ErrorKind::OrderCap: return "order_cap_exceeded";
    case ErrorKind::Regularity: return "irregular_curve";
    case ErrorKind::Construction: return "invalid_construction";
    case ErrorKind::Size: return "invalid_size";
    case ErrorKind::Shape: return "shape_mismatch";
    case ErrorKind::Degenerate: return "degenerate_data";
    case ErrorKind::Rank: return "rank_deficient";
    case ErrorKind::InvalidTau0: return "tau0_too_small";
    case ErrorKind::Config: return "invalid_config";
    case ErrorKind::Convergence: return "convergence_failure";
  }
  return "unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Construction:
    case ErrorKind::Regularity:
    case ErrorKind::InvalidTau0:
    case ErrorKind::Config:
    case ErrorKind::Size:
      return true;
    default:
      return false;
  }
}

}  // namespace fbm
