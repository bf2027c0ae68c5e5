#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace merlin {

enum class SortKind : std::uint8_t { String, Int, Bool, BitVec };

struct Sort {
  SortKind kind = SortKind::String;
  std::uint32_t width = 0;  // only meaningful for BitVec

  static Sort string() { return {SortKind::String, 0}; }
  static Sort integer() { return {SortKind::Int, 0}; }
  static Sort boolean() { return {SortKind::Bool, 0}; }
  static Sort bitvec(std::uint32_t w) { return {SortKind::BitVec, w}; }

  bool operator==(const Sort& o) const { return kind == o.kind && (kind != SortKind::BitVec || width == o.width); }

  std::string to_string() const {
    switch (kind) {
      case SortKind::String: return "String";
      case SortKind::Int: return "Int";
      case SortKind::Bool: return "Bool";
      case SortKind::BitVec: return "(_ BitVec " + std::to_string(width) + ")";
    }
    return "?";
  }
};

inline std::uint64_t width_mask(std::uint32_t w) { return w >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << w) - 1); }

struct BitVec {
  std::uint64_t bits = 0;
  std::uint32_t width = 0;

  BitVec() = default;
  BitVec(std::uint64_t b, std::uint32_t w) : bits(b & width_mask(w)), width(w) {
    if (w == 0 || w > 64) throw std::invalid_argument("bit-vector width must be in 1..64");
  }
  bool operator==(const BitVec& o) const { return bits == o.bits && width == o.width; }
};

class Value {
 public:
  Value() : v_(std::string{}) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(bool b) : v_(b) {}
  Value(BitVec b) : v_(b) {}

  static Value bv(std::uint64_t bits, std::uint32_t w) { return Value(BitVec(bits, w)); }

  Sort sort() const {
    switch (v_.index()) {
      case 0: return Sort::string();
      case 1: return Sort::integer();
      case 2: return Sort::boolean();
      default: return Sort::bitvec(std::get<3>(v_).width);
    }
  }

  bool is_string() const { return v_.index() == 0; }
  bool is_int() const { return v_.index() == 1; }
  bool is_bool() const { return v_.index() == 2; }
  bool is_bv() const { return v_.index() == 3; }

  const std::string& str() const { return get<std::string>("String"); }
  std::int64_t integer() const { return get<std::int64_t>("Int"); }
  bool boolean() const { return get<bool>("Bool"); }
  const BitVec& bv() const { return get<BitVec>("BitVec"); }
  std::uint64_t bits() const { return bv().bits; }

  bool operator==(const Value& o) const { return v_ == o.v_; }

  std::size_t hash() const {
    std::size_t h = v_.index() * 0x9e3779b97f4a7c15ULL;
    switch (v_.index()) {
      case 0: return h ^ std::hash<std::string>{}(std::get<0>(v_));
      case 1: return h ^ std::hash<std::int64_t>{}(std::get<1>(v_));
      case 2: return h ^ static_cast<std::size_t>(std::get<2>(v_));
      default: {
        const auto& b = std::get<3>(v_);
        return h ^ std::hash<std::uint64_t>{}(b.bits * 31 + b.width);
      }
    }
  }

  // SMT-LIB literal
  std::string to_smt() const {
    switch (v_.index()) {
      case 0: {
        std::string out = "\"";
        for (char c : std::get<0>(v_)) {
          if (c == '"') out += "\"\"";
          else out += c;
        }
        return out + "\"";
      }
      case 1: {
        auto i = std::get<1>(v_);
        return i < 0 ? "(- " + std::to_string(-i) + ")" : std::to_string(i);
      }
      case 2: return std::get<2>(v_) ? "true" : "false";
      default: {
        const auto& b = std::get<3>(v_);
        std::string out;
        if (b.width % 4 == 0) {
          static const char* hex = "0123456789abcdef";
          for (int i = static_cast<int>(b.width / 4) - 1; i >= 0; --i) out += hex[(b.bits >> (4 * i)) & 0xf];
          return "#x" + out;
        }
        for (int i = static_cast<int>(b.width) - 1; i >= 0; --i) out += ((b.bits >> i) & 1) ? '1' : '0';
        return "#b" + out;
      }
    }
  }

 private:
  template <class T>
  const T& get(const char* what) const {
    if (auto p = std::get_if<T>(&v_)) return *p;
    throw std::logic_error(std::string("value is not of sort ") + what);
  }

  std::variant<std::string, std::int64_t, bool, BitVec> v_;
};

// One output per example, in example order.
using OutputVector = std::vector<Value>;

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace merlin
