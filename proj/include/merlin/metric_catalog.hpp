#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "merlin/metrics_bv.hpp"
#include "merlin/metrics_string.hpp"
#include "merlin/semantics.hpp"

namespace merlin {

// 0 on equal values, 1 otherwise. Used by the instance that never prunes.
class DiscreteMetric final : public DataOrimetric {
 public:
  std::string name() const override { return "inf"; }
  Dist distance(const Value& i, const Value& o) const override { return i == o ? Dist::zero() : Dist::from_int(1); }
  Dist max_distance(const Value&) const override { return Dist::from_int(1); }
};

enum class Logic { Strings, BitVectors };

// Failure constant for a task: one more than the largest sum of in-range distances.
inline std::int64_t failure_constant_for(Logic logic, const ExampleSet& ex, std::uint32_t width) {
  std::int64_t c = 1;
  for (const auto& o : ex.outputs) {
    if (logic == Logic::Strings) c += static_cast<std::int64_t>(o.is_string() ? o.str().size() : 0);
    else c += width + 1;
  }
  return c;
}

inline const std::vector<std::string>& string_metric_names() {
  static const std::vector<std::string> names = {"concat", "substr", "lvst", "overview", "inf"};
  return names;
}
inline const std::vector<std::string>& bv_metric_names() {
  static const std::vector<std::string> names = {"and", "or", "mul", "hd", "inf"};
  return names;
}

inline bool metric_supports(const std::string& name, Logic logic) {
  const auto& names = logic == Logic::Strings ? string_metric_names() : bv_metric_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

inline MetricPtr make_metric(const std::string& name, Logic logic, const ExampleSet& ex, std::uint32_t width) {
  if (!metric_supports(name, logic))
    throw std::invalid_argument("metric '" + name + "' is not available for " +
                                (logic == Logic::Strings ? "string" : "bit-vector") + " tasks");
  std::int64_t c = failure_constant_for(logic, ex, width);
  if (name == "inf") return std::make_shared<DiscreteMetric>();
  if (name == "overview") return std::make_shared<OverviewMetric>();
  if (name == "concat") return std::make_shared<ConcatMetric>(c);
  if (name == "substr") return std::make_shared<SubstrMetric>(c);
  if (name == "lvst") return std::make_shared<LevenshteinMetric>(ex.outputs);
  if (name == "and") return std::make_shared<AndMetric>(width, c);
  if (name == "or") return std::make_shared<OrMetric>(width, c);
  if (name == "mul") return std::make_shared<MulMetric>(width, c);
  if (name == "hd") return std::make_shared<HammingMetric>(width);
  throw std::invalid_argument("unknown metric " + name);
}

inline RadiusPolicy default_radius(const std::string& name) {
  if (name == "inf") return RadiusPolicy::none();
  if (name == "overview") return RadiusPolicy::failure_constant();
  if (name == "lvst") return RadiusPolicy::percent(100);
  if (name == "hd") return RadiusPolicy::percent(75);
  return RadiusPolicy::failure_constant();
}

}  // namespace merlin
