#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace chpot {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Travel time in integer milliseconds.
using Weight = std::uint32_t;

// Absolute time of day in milliseconds (may exceed one period for long routes).
using Time = std::uint64_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();
inline constexpr EdgeId kInvalidEdge = std::numeric_limits<EdgeId>::max();

// Below half of the 32 bit range, so the sum of two weights never wraps.
inline constexpr Weight kInfWeight = (Weight{1} << 31) - 1;

// Saturating addition: anything reaching kInfWeight stays there.
constexpr Weight sat_add(Weight a, Weight b) noexcept {
  const std::uint64_t sum = std::uint64_t{a} + b;
  return sum >= kInfWeight ? kInfWeight : static_cast<Weight>(sum);
}

constexpr bool is_finite(Weight w) noexcept { return w < kInfWeight; }

enum EdgeTag : std::uint8_t {
  kTagNone = 0,
  kTagTunnel = 1,
  kTagHighway = 2,
};

/// Input violates a structural precondition (bad node id, size mismatch, ...).
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A text file could not be parsed. Carries the 1-based line number, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Query weights dropped below the preprocessing lower bound, or a heuristic
/// turned out infeasible. These break exactness and must not be ignored.
class ContractViolation : public std::runtime_error {
 public:
  ContractViolation(EdgeId edge, const std::string& what)
      : std::runtime_error("edge " + std::to_string(edge) + ": " + what), edge_(edge) {}

  EdgeId edge() const noexcept { return edge_; }

 private:
  EdgeId edge_;
};

}  // namespace chpot
