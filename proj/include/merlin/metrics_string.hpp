#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include "merlin/levenshtein.hpp"
#include "merlin/orimetric.hpp"

namespace merlin {

namespace detail {
inline std::int64_t absdiff(std::size_t a, std::size_t b) {
  return a > b ? static_cast<std::int64_t>(a - b) : static_cast<std::int64_t>(b - a);
}
inline bool is_infix(const std::string& needle, const std::string& hay) { return hay.find(needle) != std::string::npos; }
}  // namespace detail

// Small demonstration metric: cheap when the output still contains the target.
class OverviewMetric final : public DataOrimetric {
 public:
  static constexpr std::int64_t kPenalty = 100;

  std::string name() const override { return "overview"; }
  Dist distance(const Value& i, const Value& o) const override {
    const auto &si = i.str(), &so = o.str();
    if (detail::is_infix(so, si)) return Dist::from_int(static_cast<std::int64_t>(si.size() - so.size()));
    return Dist::from_int(kPenalty + detail::absdiff(si.size(), so.size()));
  }
  Dist max_distance(const Value&) const override { return Dist::from_int(kPenalty); }
  std::optional<Dist> failure_constant() const override { return Dist::from_int(kPenalty); }
  Aggregation aggregation() const override { return Aggregation::Max; }
};

// Guides toward outputs that can be completed by concatenation.
class ConcatMetric final : public DataOrimetric {
 public:
  explicit ConcatMetric(std::int64_t c) : c_(c) {}
  std::string name() const override { return "concat"; }
  Dist distance(const Value& i, const Value& o) const override {
    const auto &si = i.str(), &so = o.str();
    if (detail::is_infix(si, so)) return Dist::from_int(static_cast<std::int64_t>(so.size() - si.size()));
    return Dist::from_int(c_ + detail::absdiff(so.size(), si.size()));
  }
  Dist max_distance(const Value& o) const override { return Dist::from_int(static_cast<std::int64_t>(o.str().size())); }
  std::optional<Dist> failure_constant() const override { return Dist::from_int(c_); }

 private:
  std::int64_t c_;
};

// Guides toward outputs that still contain the target.
class SubstrMetric final : public DataOrimetric {
 public:
  explicit SubstrMetric(std::int64_t c) : c_(c) {}
  std::string name() const override { return "substr"; }
  Dist distance(const Value& i, const Value& o) const override {
    const auto &si = i.str(), &so = o.str();
    if (detail::is_infix(so, si)) return Dist::from_int(static_cast<std::int64_t>(si.size() - so.size()));
    return Dist::from_int(c_ + detail::absdiff(so.size(), si.size()));
  }
  Dist max_distance(const Value& o) const override { return Dist::from_int(static_cast<std::int64_t>(o.str().size())); }
  std::optional<Dist> failure_constant() const override { return Dist::from_int(c_); }

 private:
  std::int64_t c_;
};

class LevenshteinMetric final : public DataOrimetric {
 public:
  static constexpr std::int64_t kPerOutput = 4;

  LevenshteinMetric() = default;
  // targets get a prebuilt automaton for bounded queries
  explicit LevenshteinMetric(const std::vector<Value>& targets) {
    for (const auto& t : targets)
      if (t.is_string() && t.str().size() <= kAutomatonMaxTarget && !automata_.count(t.str()))
        automata_.emplace(t.str(), std::make_shared<LevenshteinAutomaton>(t.str(), LevenshteinAutomaton::kMaxRadius));
  }

  std::string name() const override { return "lvst"; }
  Dist distance(const Value& i, const Value& o) const override {
    return Dist::from_int(static_cast<std::int64_t>(levenshtein(i.str(), o.str())));
  }
  Dist bounded(const Value& i, const Value& o, Dist bound) const override {
    if (bound <= Dist::zero()) return Dist::zero();
    // smallest integer cap with cap >= bound
    std::int64_t cap = (bound.raw + Dist::kOne - 1) / Dist::kOne;
    if (cap <= static_cast<std::int64_t>(LevenshteinAutomaton::kMaxRadius)) {
      if (auto it = automata_.find(o.str()); it != automata_.end()) {
        std::uint32_t d = it->second->capped_distance(i.str());
        return Dist::from_int(std::min<std::int64_t>(d, cap));
      }
    }
    return Dist::from_int(static_cast<std::int64_t>(levenshtein_capped(i.str(), o.str(), static_cast<std::size_t>(cap))));
  }
  Dist max_distance(const Value&) const override { return Dist::from_int(kPerOutput); }

 private:
  static constexpr std::size_t kAutomatonMaxTarget = 64;
  std::unordered_map<std::string, std::shared_ptr<const LevenshteinAutomaton>> automata_;
};

}  // namespace merlin
