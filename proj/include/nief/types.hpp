#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nief {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Error thrown by numerical operations.  `code()` is a stable machine
/// readable name (SingularSaturation, DegenerateDenominator, ...) used by
/// the CLI to build JSON error records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Outcome of an inequality-style criterion: margin = LHS - RHS of the
/// underlying inequality, holds = the stated condition is met.
struct ConditionReport {
  bool holds{false};
  double margin{0.0};
};

}  // namespace nief
