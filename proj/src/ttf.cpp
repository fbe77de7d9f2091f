#include "chpot/ttf.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

namespace chpot {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool is_fifo(std::span<const Breakpoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Breakpoint& a = points[i];
    const Breakpoint& b = points[(i + 1) % points.size()];
    const std::int64_t span = i + 1 < points.size() ? std::int64_t{b.time} - a.time
                                                    : std::int64_t{b.time} + std::int64_t(kDayMs) - a.time;
    if (std::int64_t{b.value} - a.value < -span) return false;
  }
  return true;
}

TravelTimeFunction::TravelTimeFunction(std::vector<Breakpoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw MalformedInput("travel time function needs at least one breakpoint");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].time >= kDayMs) throw MalformedInput("breakpoint time outside one day");
    if (i > 0 && points_[i].time <= points_[i - 1].time)
      throw MalformedInput("breakpoint times must be strictly increasing");
    if (points_[i].value >= kInfWeight) throw MalformedInput("breakpoint value too large");
  }
  if (!is_fifo(points_)) throw MalformedInput("travel time function violates FIFO (slope below -1)");
}

Weight TravelTimeFunction::eval(Time tau) const noexcept {
  if (points_.size() == 1) return points_.front().value;
  const auto t = static_cast<std::int64_t>(tau % kDayMs);
  const auto day = static_cast<std::int64_t>(kDayMs);
  const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                   [](std::int64_t x, const Breakpoint& p) { return x < p.time; });
  std::int64_t left_t, left_v, right_t, right_v;
  if (it == points_.begin() || it == points_.end()) {
    left_t = points_.back().time;
    left_v = points_.back().value;
    right_t = points_.front().time + day;
    right_v = points_.front().value;
  } else {
    left_t = std::prev(it)->time;
    left_v = std::prev(it)->value;
    right_t = it->time;
    right_v = it->value;
  }
  const std::int64_t x = t >= left_t ? t : t + day;
  return static_cast<Weight>(left_v + floor_div((right_v - left_v) * (x - left_t), right_t - left_t));
}

Weight TravelTimeFunction::lower_bound() const noexcept {
  Weight best = kInfWeight;
  for (const Breakpoint& p : points_) best = std::min(best, p.value);
  return best;
}

Weight blend_live_predicted(Weight live, const TravelTimeFunction& predicted, Time tau_soon, Time tau) noexcept {
  if (tau <= tau_soon) return live;
  const std::int64_t elapsed = static_cast<std::int64_t>(tau - tau_soon);
  const std::int64_t predicted_now = predicted.eval(tau);
  if (predicted.eval(tau_soon) < live) {
    // Live is slower than predicted: decay with slope -1, never below the prediction.
    return static_cast<Weight>(std::max<std::int64_t>(std::int64_t{live} - elapsed, predicted_now));
  }
  return static_cast<Weight>(std::min<std::int64_t>(std::int64_t{live} + elapsed, predicted_now));
}

LiveBlend::LiveBlend(std::span<const Weight> live, std::span<const TravelTimeFunction> predicted, Time tau_soon)
    : live_(live), predicted_(predicted), tau_soon_(tau_soon) {
  if (live.size() != predicted.size()) throw MalformedInput("live and predicted tables differ in size");
}

}  // namespace chpot
