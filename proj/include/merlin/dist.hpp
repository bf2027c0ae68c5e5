#pragma once

#include <cstdint>
#include <compare>
#include <limits>
#include <ostream>
#include <string>

namespace merlin {

// Distances are fixed-point: raw units of 2^-20, so the smallest
// positive distance (epsilon) is exactly one unit.
struct Dist {
  static constexpr int kShift = 20;
  static constexpr std::int64_t kOne = std::int64_t{1} << kShift;

  std::int64_t raw = 0;

  static constexpr Dist zero() { return Dist{0}; }
  static constexpr Dist epsilon() { return Dist{1}; }
  static constexpr Dist from_int(std::int64_t v) { return Dist{v * kOne}; }
  static constexpr Dist infinity() { return Dist{std::numeric_limits<std::int64_t>::max() / 4}; }
  static Dist from_double(double v) { return Dist{static_cast<std::int64_t>(v * static_cast<double>(kOne))}; }

  double to_double() const { return static_cast<double>(raw) / static_cast<double>(kOne); }
  bool is_zero() const { return raw == 0; }

  constexpr auto operator<=>(const Dist&) const = default;

  // saturates at infinity so that sums of capped terms never wrap
  friend constexpr Dist operator+(Dist a, Dist b) {
    std::int64_t cap = infinity().raw;
    if (a.raw >= cap - b.raw) return Dist{cap};
    return Dist{a.raw + b.raw};
  }
  friend constexpr Dist operator-(Dist a, Dist b) { return Dist{a.raw - b.raw}; }
  Dist& operator+=(Dist o) { return *this = *this + o; }

  std::string to_string() const {
    if (raw % kOne == 0) return std::to_string(raw / kOne);
    return std::to_string(to_double());
  }
};

inline std::ostream& operator<<(std::ostream& os, Dist d) { return os << d.to_string(); }

}  // namespace merlin
