#pragma once

#include <cstdlib>
#include <mutex>
#include <stop_token>
#include <thread>
#include <vector>

#include "merlin/solver.hpp"

namespace merlin {

inline std::vector<SolverConfig> default_portfolio(Logic logic) {
  std::vector<SolverConfig> out;
  for (const auto& name : logic == Logic::Strings ? string_metric_names() : bv_metric_names()) {
    if (name == "overview") continue;
    SolverConfig c;
    c.metric = name;
    out.push_back(c);
  }
  return out;
}

// Portfolio width from MERLIN_THREADS, if set to a positive number.
inline std::optional<std::size_t> thread_cap_from_env() {
  const char* v = std::getenv("MERLIN_THREADS");
  if (!v) return std::nullopt;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || n <= 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

namespace detail {

class Mailbox {
 public:
  void post(std::vector<Program> ps) {
    std::lock_guard lock(mu_);
    for (auto& p : ps) items_.push_back(std::move(p));
  }
  std::vector<Program> take() {
    std::lock_guard lock(mu_);
    return std::exchange(items_, {});
  }

 private:
  std::mutex mu_;
  std::vector<Program> items_;
};

}  // namespace detail

// Runs one instance per config concurrently; the first verified solution wins.
// The non-pruning instance is always present. A candidate found by one
// instance is checked against every other pruning instance's own ball and the
// subprograms inside it are promoted there; the non-pruning instance receives
// everything some other instance found valuable.
inline SolveResult solve_portfolio(const SynthesisTask& task, std::vector<SolverConfig> configs,
                                   std::optional<std::size_t> cap = thread_cap_from_env()) {
  std::vector<SolverConfig> cfgs;
  std::optional<SolverConfig> inf;
  for (auto& c : configs) {
    auto r = resolved(c, task.logic);
    if (r.metric == "inf" || !r.prune) {
      if (!inf) inf = r;
    } else {
      cfgs.push_back(r);
    }
  }
  if (!inf) {
    SolverConfig c = configs.empty() ? SolverConfig{} : configs.front();
    c.metric = "inf";
    c.radius.reset();
    c.prune = false;
    c.sketches.reset();
    inf = resolved(c, task.logic);
  }
  if (cap && *cap >= 1 && cfgs.size() + 1 > *cap) cfgs.resize(*cap - 1);
  cfgs.push_back(*inf);

  const std::size_t n = cfgs.size();
  const bool strings = task.logic == Logic::Strings;
  for (auto& c : cfgs)
    if (c.deduce) c.sketches = sketches_for_metric(c.metric, strings);

  // precise balls used to judge shared candidates
  struct Judge {
    std::optional<LiftedOrimetric> metric;
    std::optional<Dist> radius;
    bool pruning = false;
  };
  std::vector<Judge> judges(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!cfgs[i].prune || cfgs[i].metric == "inf") continue;
    LiftedOrimetric m(make_metric(cfgs[i].metric, task.logic, task.examples, task.width), all_indices(task.examples.size()));
    judges[i].radius = resolve_radius(*cfgs[i].radius, m, task.examples.outputs);
    judges[i].metric = std::move(m);
    judges[i].pruning = judges[i].radius.has_value();
  }

  std::vector<detail::Mailbox> boxes(n);
  std::vector<InstanceReport> reports(n);
  std::stop_source stop;
  std::mutex result_mu;
  std::optional<std::size_t> first;

  auto share = [&](std::size_t from, const Program& cand) {
    std::vector<Program> for_inf;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (i == from || !judges[i].pruning) continue;
      auto vals = valuable_subprograms(cand, task.examples, *judges[i].metric, judges[i].radius);
      for_inf.insert(for_inf.end(), vals.begin(), vals.end());
      boxes[i].post(std::move(vals));
    }
    if (from != n - 1) {
      // the sender's own verdict counts for the non-pruning instance too
      if (judges[from].pruning) {
        auto own = valuable_subprograms(cand, task.examples, *judges[from].metric, judges[from].radius);
        for_inf.insert(for_inf.end(), own.begin(), own.end());
      }
      boxes[n - 1].post(std::move(for_inf));
    }
  };

  {
    std::vector<std::jthread> threads;
    threads.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      threads.emplace_back([&, i] {
        InstanceLink link;
        link.stop = stop.get_token();
        link.on_candidate = [&, i](const Program& p) { share(i, p); };
        link.take_shared = [&, i] { return boxes[i].take(); };
        InstanceReport r = solve_instance(task, cfgs[i], &link);
        bool won = r.status == SolveStatus::Solved;
        std::lock_guard lock(result_mu);
        reports[i] = std::move(r);
        if (won && !first) {
          first = i;
          stop.request_stop();
        }
      });
    }
  }

  SolveResult res;
  res.instances = std::move(reports);
  bool any_timeout = false;
  for (const auto& r : res.instances) any_timeout = any_timeout || r.status == SolveStatus::Timeout;
  if (first) {
    res.solution = res.instances[*first].solution;
    res.winner = res.instances[*first].metric;
  }
  res.status = res.solution ? SolveStatus::Solved : any_timeout ? SolveStatus::Timeout : SolveStatus::Exhausted;
  return res;
}

}  // namespace merlin
