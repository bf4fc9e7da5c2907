#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "schauder/common.hpp"

namespace schauder {

/// Exact representation of a grid point t = numerator * 2^-level in [0, 1].
struct DyadicIndex {
  std::int64_t numerator = 0;
  int level = 0;

  DyadicIndex() = default;
  DyadicIndex(std::int64_t numerator_, int level_)
      : numerator(numerator_), level(level_) {
    validate();
  }

  void validate() const {
    if (level < 0 || level > kMaxLevel) {
      throw ValidationError("DyadicIndex: level " + std::to_string(level) +
                            " outside [0, " + std::to_string(kMaxLevel) + "]");
    }
    if (numerator < 0 || numerator > pow2i(level)) {
      throw ValidationError("DyadicIndex: numerator " +
                            std::to_string(numerator) +
                            " outside [0, 2^level] at level " +
                            std::to_string(level));
    }
  }

  double value() const { return std::ldexp(double(numerator), -level); }

  /// Canonical form: odd numerator, or numerator 0 at level 0.
  DyadicIndex reduced() const {
    DyadicIndex r = *this;
    while (r.level > 0 && r.numerator % 2 == 0) {
      r.numerator /= 2;
      --r.level;
    }
    return r;
  }

  /// Same point expressed at a finer level (new_level >= reduced level).
  DyadicIndex at_level(int new_level) const {
    DyadicIndex r = reduced();
    if (new_level < r.level || new_level > kMaxLevel) {
      throw ValidationError("DyadicIndex::at_level: point not representable");
    }
    return DyadicIndex(r.numerator << (new_level - r.level), new_level);
  }

  friend bool operator==(const DyadicIndex& a, const DyadicIndex& b) {
    DyadicIndex ra = a.reduced(), rb = b.reduced();
    return ra.numerator == rb.numerator && ra.level == rb.level;
  }
};

}  // namespace schauder
