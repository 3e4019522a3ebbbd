#pragma once

#include <stdexcept>
#include <string>

namespace fbm {

enum class ErrorKind {
  Domain,       // argument outside the function's domain
  OrderCap,     // |n| above the supported Bessel order cap
  Regularity,   // curve speed vanishes
  Construction, // invalid curve / problem construction
  Size,         // invalid discretization size
  Shape,        // matrix shape mismatch
  Degenerate,   // zero reference data or norm
  Rank,         // rank-deficient unregularized solve
  InvalidTau0,  // tau0 <= tau_min
  Config,       // configuration file or CLI argument problem
  Convergence,  // iterative numerical kernel failed
};

/// Machine-readable error code, e.g. "tau0_too_small".
const char* error_code(ErrorKind kind) noexcept;

/// True for errors that stem from invalid user input rather than numerics.
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* code() const noexcept { return error_code(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace fbm
