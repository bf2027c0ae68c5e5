#pragma once

#include <bit>
#include <cstdint>

#include "merlin/orimetric.hpp"

namespace merlin {

namespace bits {

// leading zeros within a w-bit word; lz(0) = w
inline std::uint32_t lz(std::uint64_t x, std::uint32_t w) {
  x &= width_mask(w);
  if (x == 0) return w;
  return static_cast<std::uint32_t>(std::countl_zero(x)) - (64 - w);
}
inline std::uint32_t tz(std::uint64_t x, std::uint32_t w) {
  x &= width_mask(w);
  return x == 0 ? w : static_cast<std::uint32_t>(std::countr_zero(x));
}
inline std::uint32_t popcount(std::uint64_t x) { return static_cast<std::uint32_t>(std::popcount(x)); }
// a is bitwise below b
inline bool below(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

}  // namespace bits

class BvMetric : public DataOrimetric {
 public:
  BvMetric(std::uint32_t w, std::int64_t c) : w_(w), c_(c) {}
  std::optional<Dist> failure_constant() const override { return Dist::from_int(c_); }
  std::uint32_t width() const { return w_; }

 protected:
  std::uint32_t w_;
  std::int64_t c_;
};

class AndMetric final : public BvMetric {
 public:
  using BvMetric::BvMetric;
  std::string name() const override { return "and"; }
  Dist distance(const Value& i, const Value& o) const override {
    std::uint64_t x = i.bits(), y = o.bits();
    if (!bits::below(y, x)) return Dist::from_int(c_);
    return Dist::from_int(bits::popcount(x & ~y));
  }
  Dist max_distance(const Value& o) const override { return Dist::from_int(bits::popcount(~o.bits() & width_mask(w_))); }
};

class OrMetric final : public BvMetric {
 public:
  using BvMetric::BvMetric;
  std::string name() const override { return "or"; }
  Dist distance(const Value& i, const Value& o) const override {
    std::uint64_t x = i.bits(), y = o.bits();
    if (!bits::below(x, y)) return Dist::from_int(c_);
    return Dist::from_int(bits::popcount(y & ~x));
  }
  Dist max_distance(const Value& o) const override { return Dist::from_int(bits::popcount(o.bits())); }
};

class MulMetric final : public BvMetric {
 public:
  using BvMetric::BvMetric;
  std::string name() const override { return "mul"; }
  Dist distance(const Value& i, const Value& o) const override {
    std::uint64_t x = i.bits(), y = o.bits();
    if (x == y) return Dist::zero();
    std::uint32_t li = bits::lz(x, w_), lo = bits::lz(y, w_);
    if (li <= lo) return Dist::from_int(1 + static_cast<std::int64_t>(lo) - li);
    return Dist::from_int(c_);
  }
  Dist max_distance(const Value& o) const override { return Dist::from_int(1 + bits::lz(o.bits(), w_)); }
};

// Hamming distance folded so that near-complements are also close.
class HammingMetric final : public DataOrimetric {
 public:
  explicit HammingMetric(std::uint32_t w) : w_(w) {}
  std::string name() const override { return "hd"; }
  Dist distance(const Value& i, const Value& o) const override {
    std::uint32_t h = bits::popcount((i.bits() ^ o.bits()) & width_mask(w_));
    return Dist::from_int(h <= w_ / 2 ? h : w_ - h + 1);
  }
  Dist max_distance(const Value&) const override { return Dist::from_int((w_ + 1) / 2); }

 private:
  std::uint32_t w_;
};

}  // namespace merlin
