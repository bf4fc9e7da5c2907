#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace schauder {

// Generation/level indices are capped so that 2^m fits comfortably in
// 64-bit integer arithmetic.
inline constexpr int kMaxLevel = 62;

/// Invalid index, wrong sample count, malformed input, ...
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Roughness estimate requested on an identically-zero generation.
class UndefinedEstimateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solve hit a matrix that is singular to working precision.
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power iteration failed to converge within the iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::int64_t pow2i(int e) {
  if (e < 0 || e > kMaxLevel) {
    throw ValidationError("pow2i: exponent " + std::to_string(e) +
                          " outside [0, " + std::to_string(kMaxLevel) + "]");
  }
  return std::int64_t{1} << e;
}

/// 2^x for possibly fractional or negative x.
inline double pow2d(double x) { return std::exp2(x); }

}  // namespace schauder
