#pragma once

#include <json.hpp>

#include "merlin/solver.hpp"

namespace merlin {

inline nlohmann::json to_json(const SearchStats& s) {
  return {{"enumerated", s.enumerated},       {"kept", s.kept},
          {"pruned_ball", s.pruned_ball},     {"pruned_equiv", s.pruned_equiv},
          {"eval_errors", s.eval_errors},     {"deduction_hits", s.deduction_hits},
          {"kept_per_cost", s.kept_per_cost}};
}

inline nlohmann::json to_json(const InstanceReport& r) {
  SearchStats t = r.totals();
  nlohmann::json its = nlohmann::json::array();
  for (const auto& it : r.iterations) {
    nlohmann::json j = to_json(it.stats);
    j["examples"] = it.examples;
    j["candidate"] = it.candidate ? nlohmann::json(it.candidate->to_string()) : nlohmann::json(nullptr);
    j["restarted"] = it.restarted;
    its.push_back(std::move(j));
  }
  return {{"metric", r.metric},
          {"radius", r.radius},
          {"status", to_string(r.status)},
          {"solved", r.status == SolveStatus::Solved},
          {"iterations", r.cegar_iterations()},
          {"enumerated", t.enumerated},
          {"kept", t.kept},
          {"pruned_ball", t.pruned_ball},
          {"pruned_equiv", t.pruned_equiv},
          {"deduction_hits", t.deduction_hits},
          {"candidates", r.candidates.size()},
          {"promotions_received", r.promotions_received},
          {"wall_ms", r.wall_ms},
          {"solution_size", r.solution ? nlohmann::json(r.solution->size()) : nlohmann::json(nullptr)},
          {"per_iteration", std::move(its)}};
}

inline nlohmann::json to_json(const SolveResult& res) {
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& r : res.instances) inst.push_back(to_json(r));
  return {{"status", to_string(res.status)},
          {"solved", res.status == SolveStatus::Solved},
          {"winner", res.winner},
          {"solution", res.solution ? nlohmann::json(res.solution->to_string()) : nlohmann::json(nullptr)},
          {"instances", std::move(inst)}};
}

}  // namespace merlin
