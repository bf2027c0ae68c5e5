#pragma once

#include <ostream>
#include <string>

#include "merlin/merlin.hpp"

namespace merlin {
inline void PrintTo(const Value& v, std::ostream* os) { *os << v.to_smt(); }
inline void PrintTo(const Program& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const Dist& d, std::ostream* os) { *os << d.to_string(); }
}  // namespace merlin

namespace merlin::testing {

inline std::string task_path(const std::string& rel) { return std::string(MERLIN_TASK_DIR) + "/" + rel; }

// x : String, grammar S ::= x | "a" | "b" | (str.++ S S)
inline SynthesisTask tiny_string_task() {
  return parse_sygus(R"((synth-fun f ((x String)) String ((S String (x "a" "b" (str.++ S S)))))
(constraint (= (f "q") "qa"))
(constraint (= (f "r") "ra")))");
}

inline Program str(const std::string& s) { return Program::make(Terminal::constant_of(Value(s))); }
inline Program var(std::uint32_t i, const std::string& n, Sort s = Sort::string()) {
  return Program::make(Terminal::variable(i, n, s));
}
inline Program app(Opcode op, std::vector<Program> kids, std::uint32_t w = 0) {
  return Program::make(Terminal::op_of(op, w), std::move(kids));
}

// Kept programs per cost when enumerating to max_cost without stopping.
inline std::vector<std::uint64_t> census(const SynthesisTask& t, const std::string& metric, IndexSet j, bool factorize,
                                         std::optional<Dist> radius, std::uint32_t s, std::uint32_t max_cost) {
  LiftedOrimetric m(make_metric(metric, t.logic, t.examples, t.width), std::move(j));
  PruneOptions po;
  po.factorize = factorize;
  po.threshold = SizeThreshold{s};
  if (radius) po.ball = Ball{*radius, false};
  CostModel costs;
  Enumerator en(t.grammar, t.examples, m, costs, po, max_cost);
  while (en.next()) {
  }
  auto k = en.stats().kept_per_cost;
  k.resize(max_cost + 1, 0);
  return {k.begin() + 1, k.end()};
}

}  // namespace merlin::testing
