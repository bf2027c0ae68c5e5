#pragma once

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "merlin/deduce.hpp"
#include "merlin/enumerator.hpp"
#include "merlin/metric_catalog.hpp"
#include "merlin/task.hpp"

namespace merlin {

struct SolverConfig {
  std::string metric;                              // empty: concat for strings, and for bit-vectors
  std::optional<RadiusPolicy> radius;              // empty: the metric's default
  bool prune = true;
  bool factorize = true;
  bool learn = true;
  bool deduce = true;
  bool precise = false;                            // start with every example in J
  std::optional<std::uint32_t> size_threshold;     // empty: 3 for strings, 7 for bit-vectors
  std::optional<std::size_t> initial_examples;     // empty: 1 for strings, 2 for bit-vectors
  std::optional<std::vector<SketchKind>> sketches; // empty: all sketches
  bool deduce_at_level_end = false;
  std::uint32_t max_cost = 64;
  std::optional<std::chrono::milliseconds> timeout;
  std::uint64_t seed = 0;
};

enum class SolveStatus { Solved, Timeout, Exhausted, Cancelled };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Exhausted: return "exhausted";
    case SolveStatus::Cancelled: return "cancelled";
  }
  return "?";
}

struct IterationRecord {
  IndexSet examples;  // J used in this iteration
  SearchStats stats;
  std::optional<Program> candidate;
  bool restarted = false;  // cut short because another instance shared programs
};

struct InstanceReport {
  std::string metric;
  std::string radius;
  SolveStatus status = SolveStatus::Exhausted;
  std::vector<IterationRecord> iterations;
  std::vector<Program> candidates;  // every candidate, in discovery order
  std::optional<Program> solution;
  double wall_ms = 0;
  std::uint64_t promotions_received = 0;

  SearchStats totals() const {
    SearchStats t;
    for (const auto& it : iterations) t.add(it.stats);
    return t;
  }
  // CEGAR iterations, not counting restarts caused by shared programs
  std::size_t cegar_iterations() const {
    std::size_t n = 0;
    for (const auto& it : iterations) n += it.restarted ? 0 : 1;
    return n;
  }
};

struct SolveResult {
  SolveStatus status = SolveStatus::Exhausted;
  std::optional<Program> solution;
  std::string winner;
  std::vector<InstanceReport> instances;
};

// Fills in per-logic defaults.
inline SolverConfig resolved(const SolverConfig& c, Logic logic) {
  SolverConfig r = c;
  bool str = logic == Logic::Strings;
  if (r.metric.empty()) r.metric = str ? "concat" : "and";
  if (!r.radius) r.radius = default_radius(r.metric);
  if (!r.size_threshold) r.size_threshold = str ? 3 : 7;
  if (!r.initial_examples) r.initial_examples = str ? 1 : 2;
  if (!r.sketches) r.sketches = all_sketches();
  if (r.metric == "inf") r.precise = true;
  return r;
}

inline bool verify(const Program& p, const SynthesisTask& task) {
  return task.grammar.generates(p) && satisfies(p, task.examples);
}

// Progress: no candidate may show up twice across iterations.
inline std::optional<std::string> progress_check(const std::vector<Program>& candidates) {
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      if (candidates[i] == candidates[j])
        return "candidate " + candidates[i].to_string() + " repeated in iterations " + std::to_string(i + 1) +
               " and " + std::to_string(j + 1);
  return std::nullopt;
}

// Subprograms of p whose outputs lie in the ball (radius nullopt: all of them).
inline std::vector<Program> valuable_subprograms(const Program& p, const ExampleSet& ex, const LiftedOrimetric& m,
                                                 const std::optional<Dist>& r) {
  std::vector<Program> out;
  for (const auto& q : subprograms(p)) {
    if (q.size() <= 1 || ex.size() == 0 || !(q.sort() == ex.outputs[0].sort())) continue;
    try {
      if (!r || Ball{*r, false}.contains(m, output_vector(q, ex), ex.outputs)) out.push_back(q);
    } catch (const EvalError&) {
    }
  }
  return out;
}

// Hooks connecting an instance to a portfolio.
struct InstanceLink {
  std::stop_token stop;
  // called with every candidate, including spurious ones
  std::function<void(const Program&)> on_candidate;
  // returns programs shared since the last call
  std::function<std::vector<Program>()> take_shared;
};

inline InstanceReport solve_instance(const SynthesisTask& task, const SolverConfig& config,
                                     const InstanceLink* link = nullptr) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const SolverConfig cfg = resolved(config, task.logic);
  const ExampleSet& ex = task.examples;
  const Grammar& g = task.grammar;

  InstanceReport rep;
  rep.metric = cfg.metric;
  rep.radius = cfg.prune ? cfg.radius->to_string() : "none";

  MetricPtr base = make_metric(cfg.metric, task.logic, ex, task.width);
  IndexSet j = cfg.precise ? all_indices(ex.size()) : first_indices(*cfg.initial_examples, ex.size());
  const LiftedOrimetric precise(base, all_indices(ex.size()));
  std::optional<Dist> precise_radius;
  if (cfg.prune) precise_radius = resolve_radius(*cfg.radius, precise, ex.outputs);

  std::optional<Deducer> deducer;
  if (cfg.deduce) deducer.emplace(g, ex, *cfg.sketches);
  if (deducer && deducer->empty()) deducer.reset();

  CostModel costs;
  std::optional<Clock::time_point> deadline;
  if (cfg.timeout) deadline = t0 + *cfg.timeout;

  auto finish = [&](SolveStatus s) {
    rep.status = s;
    rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return rep;
  };
  auto timed_out = [&] { return deadline && Clock::now() >= *deadline; };
  auto cancelled = [&] { return link && link->stop.stop_requested(); };

  auto absorb_shared = [&]() {
    if (!link || !link->take_shared) return false;
    bool fresh = false;
    for (const auto& q : link->take_shared()) {
      ++rep.promotions_received;
      fresh = costs.promote(q, g.derivable(q)) || fresh;
    }
    return fresh;
  };

  while (true) {
    LiftedOrimetric m(base, j);
    PruneOptions po;
    po.factorize = cfg.factorize;
    po.threshold = SizeThreshold{*cfg.size_threshold};
    if (cfg.prune)
      if (auto r = resolve_radius(*cfg.radius, m, ex.outputs)) po.ball = Ball{*r, false};

    Enumerator en(g, ex, m, costs, po, cfg.max_cost);
    IterationRecord rec;
    rec.examples = j;
    bool restart = false;
    std::optional<Program> solved;

    en.set_poll([&] { return cancelled() || timed_out(); });
    en.set_level_hook([&](std::uint32_t cost) {
      if (cancelled() || timed_out()) return true;
      if (deducer && cfg.deduce_at_level_end && !solved) {
        const auto& bank = en.bank();
        for (EntryId id = 0; id < bank.size() && !solved; ++id) {
          if (bank[id].cost != cost) continue;
          if (auto q = deducer->deduce(bank, id)) {
            ++en.stats().deduction_hits;
            solved = q;
          }
        }
        if (solved) return true;
      }
      if (absorb_shared()) {
        restart = true;
        return true;
      }
      return false;
    });

    std::optional<Program> candidate;
    while (auto id = en.next()) {
      const BankEntry& e = en.bank()[*id];
      if (e.outputs[0].sort() == ex.outputs[0].sort() && m.distance(e.outputs, ex.outputs).is_zero()) {
        candidate = e.program;
        break;
      }
      if (deducer && !cfg.deduce_at_level_end) {
        if (auto q = deducer->deduce(en.bank(), *id)) {
          ++en.stats().deduction_hits;
          solved = q;
          break;
        }
      }
    }
    rec.stats = en.stats();
    rec.restarted = restart;

    if (solved) {
      rec.candidate = solved;
      rep.iterations.push_back(std::move(rec));
      rep.candidates.push_back(*solved);
      rep.solution = solved;
      return finish(SolveStatus::Solved);
    }
    if (candidate) {
      rec.candidate = candidate;
      rep.iterations.push_back(std::move(rec));
      rep.candidates.push_back(*candidate);
      if (link && link->on_candidate) link->on_candidate(*candidate);
      if (verify(*candidate, task)) {
        rep.solution = candidate;
        return finish(SolveStatus::Solved);
      }
      OutputVector out = output_vector(*candidate, ex);
      std::optional<std::size_t> failing;
      for (std::size_t k = 0; k < ex.size() && !failing; ++k)
        if (!(out[k] == ex.outputs[k])) failing = k;
      if (!failing) return finish(SolveStatus::Exhausted);  // agrees everywhere but not derivable
      j = refine(std::move(j), *failing);
      if (cfg.learn)
        for (const auto& q : valuable_subprograms(*candidate, ex, precise, precise_radius))
          costs.promote(q, g.derivable(q));
      absorb_shared();
      continue;
    }
    rep.iterations.push_back(std::move(rec));
    if (cancelled()) return finish(SolveStatus::Cancelled);
    if (timed_out()) return finish(SolveStatus::Timeout);
    if (restart) continue;
    return finish(SolveStatus::Exhausted);
  }
}

inline SolveResult solve_single(const SynthesisTask& task, const SolverConfig& config) {
  SolveResult res;
  res.instances.push_back(solve_instance(task, config));
  auto& r = res.instances.back();
  res.status = r.status;
  res.solution = r.solution;
  if (r.solution) res.winner = r.metric;
  return res;
}

}  // namespace merlin
