#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "timedist/errors.hpp"

namespace timedist {

// Extended non-negative real: a finite number of seconds or +infinity.
// Never negative, never NaN. +infinity is an ordinary value with full
// min/max/comparison semantics, so min-compositions of fields need no
// special cases.
class TDValue {
 public:
  constexpr TDValue() : seconds_(std::numeric_limits<double>::infinity()) {}

  static constexpr TDValue infinity() { return TDValue(); }

  static TDValue finite(double seconds) {
    if (!(seconds >= 0.0) || !std::isfinite(seconds))
      throw ValidationError("TDValue must be finite and >= 0");
    return TDValue(seconds);
  }

  // Accepts +infinity, clamps tiny negatives from float noise to 0.
  static TDValue of(double seconds) {
    if (std::isnan(seconds)) throw ValidationError("TDValue cannot be NaN");
    if (seconds < 0.0) seconds = 0.0;
    return TDValue(seconds);
  }

  bool is_infinite() const { return std::isinf(seconds_); }
  bool is_finite() const { return !is_infinite(); }

  // +infinity when infinite.
  double seconds() const { return seconds_; }

  friend auto operator<=>(TDValue a, TDValue b) { return a.seconds_ <=> b.seconds_; }
  friend bool operator==(TDValue a, TDValue b) { return a.seconds_ == b.seconds_; }

  friend TDValue min(TDValue a, TDValue b) { return a.seconds_ <= b.seconds_ ? a : b; }
  friend TDValue max(TDValue a, TDValue b) { return a.seconds_ >= b.seconds_ ? a : b; }

 private:
  constexpr explicit TDValue(double s) : seconds_(s) {}
  double seconds_;
};

}  // namespace timedist
