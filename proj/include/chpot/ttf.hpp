#pragma once

#include <span>
#include <vector>

#include "chpot/types.hpp"

namespace chpot {

inline constexpr Time kDayMs = 86'400'000;

struct Breakpoint {
  Weight time = 0;   // time of day, [0, kDayMs)
  Weight value = 0;  // travel time when entering at `time`

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Periodic piecewise linear travel time function over one day. Values
/// between breakpoints (and across midnight) are linearly interpolated,
/// rounding down, which keeps integer evaluation FIFO.
class TravelTimeFunction {
 public:
  TravelTimeFunction() : points_{{0, 0}} {}

  /// Throws MalformedInput unless times are strictly increasing within one
  /// day and every segment, including the wrap, has slope >= -1.
  explicit TravelTimeFunction(std::vector<Breakpoint> points);

  static TravelTimeFunction constant(Weight value) { return TravelTimeFunction({{0, value}}); }

  Weight eval(Time tau) const noexcept;

  /// Smallest value; interpolation never leaves the breakpoint value range.
  Weight lower_bound() const noexcept;

  std::span<const Breakpoint> breakpoints() const noexcept { return points_; }
  bool is_constant() const noexcept { return points_.size() == 1; }

 private:
  std::vector<Breakpoint> points_;
};

/// FIFO <=> every segment of the periodic interpolation has slope >= -1.
bool is_fifo(std::span<const Breakpoint> points);

/// Live travel time until tau_soon, then a unit-slope transition toward the
/// prediction that never overtakes it.
Weight blend_live_predicted(Weight live, const TravelTimeFunction& predicted, Time tau_soon, Time tau) noexcept;

/// Per-edge live snapshot blended with per-edge predictions.
class LiveBlend {
 public:
  LiveBlend(std::span<const Weight> live, std::span<const TravelTimeFunction> predicted, Time tau_soon);

  Weight eval(EdgeId e, Time tau) const noexcept {
    return blend_live_predicted(live_[e], predicted_[e], tau_soon_, tau);
  }
  Time tau_soon() const noexcept { return tau_soon_; }

 private:
  std::span<const Weight> live_;
  std::span<const TravelTimeFunction> predicted_;
  Time tau_soon_;
};

}  // namespace chpot
