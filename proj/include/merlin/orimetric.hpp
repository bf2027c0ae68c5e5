#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "merlin/dist.hpp"
#include "merlin/value.hpp"

namespace merlin {

// How per-example distances combine when lifted to a set of examples.
// Sum is the default; Max keeps the same induced equivalence and gives
// balls of the form "within r on every example".
enum class Aggregation { Sum, Max };

// An orimetric on single output values: m(i, o) is the distance from a
// produced output i to a target o.
class DataOrimetric {
 public:
  virtual ~DataOrimetric() = default;
  virtual std::string name() const = 0;
  virtual Dist distance(const Value& i, const Value& o) const = 0;
  // Exact when the true distance is below bound; otherwise some value >= bound.
  virtual Dist bounded(const Value& i, const Value& o, Dist /*bound*/) const { return distance(i, o); }
  // Largest distance below the failure constant for target o; scales percent radii.
  virtual Dist max_distance(const Value& o) const = 0;
  // The constant c returned when the metric's structural condition fails, if any.
  virtual std::optional<Dist> failure_constant() const { return std::nullopt; }
  virtual Aggregation aggregation() const { return Aggregation::Sum; }
};

using MetricPtr = std::shared_ptr<const DataOrimetric>;
using IndexSet = std::vector<std::size_t>;  // sorted example indices

inline IndexSet all_indices(std::size_t n) {
  IndexSet j(n);
  for (std::size_t i = 0; i < n; ++i) j[i] = i;
  return j;
}

inline IndexSet first_indices(std::size_t k, std::size_t n) { return all_indices(std::min(k, n)); }

// J plus the example at index k
inline IndexSet refine(IndexSet j, std::size_t k) {
  auto it = std::lower_bound(j.begin(), j.end(), k);
  if (it == j.end() || *it != k) j.insert(it, k);
  return j;
}

class LiftedOrimetric {
 public:
  LiftedOrimetric(MetricPtr base, IndexSet j) : base_(std::move(base)), j_(std::move(j)), agg_(base_->aggregation()) {}
  LiftedOrimetric(MetricPtr base, IndexSet j, Aggregation agg) : base_(std::move(base)), j_(std::move(j)), agg_(agg) {}

  const DataOrimetric& base() const { return *base_; }
  const MetricPtr& base_ptr() const { return base_; }
  const IndexSet& indices() const { return j_; }
  Aggregation aggregation() const { return agg_; }

  Dist distance(const OutputVector& a, const OutputVector& b) const {
    Dist acc = Dist::zero();
    for (auto k : j_) {
      Dist d = base_->distance(a[k], b[k]);
      acc = agg_ == Aggregation::Sum ? acc + d : std::max(acc, d);
    }
    return acc;
  }

  // Exact below bound, otherwise >= bound.
  Dist bounded(const OutputVector& a, const OutputVector& b, Dist bound) const {
    Dist acc = Dist::zero();
    for (auto k : j_) {
      Dist budget = agg_ == Aggregation::Sum ? bound - acc : bound;
      Dist d = base_->bounded(a[k], b[k], budget);
      acc = agg_ == Aggregation::Sum ? acc + d : std::max(acc, d);
      if (acc >= bound) return acc;
    }
    return acc;
  }

  bool equivalent(const OutputVector& a, const OutputVector& b) const {
    for (auto k : j_)
      if (!(a[k] == b[k])) return false;
    return true;
  }

  std::size_t equiv_hash(const OutputVector& a) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto k : j_) h = hash_combine(h, a[k].hash());
    return h;
  }

  Dist max_distance(const OutputVector& gt) const {
    Dist acc = Dist::zero();
    for (auto k : j_) {
      Dist d = base_->max_distance(gt[k]);
      acc = agg_ == Aggregation::Sum ? acc + d : std::max(acc, d);
    }
    return acc;
  }

 private:
  MetricPtr base_;
  IndexSet j_;
  Aggregation agg_;
};

struct Ball {
  Dist radius;
  bool closed = false;

  bool admits(Dist d) const { return closed ? d <= radius : d < radius; }

  bool contains(const LiftedOrimetric& m, const OutputVector& v, const OutputVector& center) const {
    Dist bound = closed ? radius + Dist::epsilon() : radius;
    return admits(m.bounded(v, center, bound));
  }
};

inline std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct RadiusPolicy {
  enum class Kind { Percent, Absolute, FailureConstant, None };
  Kind kind = Kind::FailureConstant;
  double value = 0;

  static RadiusPolicy percent(double p) { return {Kind::Percent, p}; }
  static RadiusPolicy absolute(double r) { return {Kind::Absolute, r}; }
  static RadiusPolicy failure_constant() { return {Kind::FailureConstant, 0}; }
  static RadiusPolicy none() { return {Kind::None, 0}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Percent: return format_number(value) + "%";
      case Kind::Absolute: return format_number(value);
      case Kind::FailureConstant: return "c";
      case Kind::None: return "none";
    }
    return "?";
  }
};

// Open ball radius for the given lifted metric, or nullopt when nothing is pruned.
inline std::optional<Dist> resolve_radius(const RadiusPolicy& pol, const LiftedOrimetric& m, const OutputVector& gt) {
  switch (pol.kind) {
    case RadiusPolicy::Kind::None: return std::nullopt;
    case RadiusPolicy::Kind::Absolute: return Dist::from_double(pol.value);
    case RadiusPolicy::Kind::Percent: {
      Dist r = Dist::from_double(m.max_distance(gt).to_double() * pol.value / 100.0);
      return std::max(r, Dist::epsilon());
    }
    case RadiusPolicy::Kind::FailureConstant: {
      auto c = m.base().failure_constant();
      if (!c) throw std::invalid_argument("metric " + m.base().name() + " has no failure constant");
      return *c;
    }
  }
  return std::nullopt;
}

// Ball membership relaxed for small programs: anything of cost <= s is admitted.
struct SizeThreshold {
  std::uint32_t s = 0;
  bool admits(bool in_ball, std::uint32_t cost) const { return in_ball || cost <= s; }
};

struct AxiomReport {
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Checks reflexivity, symmetry at zero and the triangle inequality on all
// ordered triples drawn from samples.
template <class T, class DistFn, class Show>
AxiomReport check_axioms(std::span<const T> xs, DistFn dist, Show show, std::size_t max_reported = 10) {
  AxiomReport rep;
  auto note = [&](std::string msg) {
    if (rep.violations.size() < max_reported) rep.violations.push_back(std::move(msg));
    else if (rep.violations.size() == max_reported) rep.violations.push_back("...");
  };
  const std::size_t n = xs.size();
  std::vector<Dist> d(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d[a * n + b] = dist(xs[a], xs[b]);
  for (std::size_t a = 0; a < n; ++a) {
    if (!d[a * n + a].is_zero()) note("reflexivity fails at " + show(xs[a]));
    for (std::size_t b = 0; b < n; ++b) {
      ++rep.pairs;
      if (d[a * n + b].raw < 0) note("negative distance " + show(xs[a]) + " -> " + show(xs[b]));
      if (d[a * n + b].is_zero() && !d[b * n + a].is_zero())
        note("zero-symmetry fails for " + show(xs[a]) + ", " + show(xs[b]));
      for (std::size_t c = 0; c < n; ++c) {
        ++rep.triples;
        if (d[a * n + c] > d[a * n + b] + d[b * n + c])
          note("triangle fails: m(" + show(xs[a]) + "," + show(xs[c]) + ")=" + d[a * n + c].to_string() + " > " +
               d[a * n + b].to_string() + "+" + d[b * n + c].to_string() + " via " + show(xs[b]));
      }
    }
  }
  return rep;
}

inline AxiomReport check_axioms(const DataOrimetric& m, std::span<const Value> xs, std::size_t max_reported = 10) {
  return check_axioms<Value>(
      xs, [&](const Value& a, const Value& b) { return m.distance(a, b); }, [](const Value& v) { return v.to_smt(); },
      max_reported);
}

}  // namespace merlin
