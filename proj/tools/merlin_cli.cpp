#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "merlin/merlin.hpp"

using namespace merlin;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct SolveArgs {
  std::string task;
  std::string metrics;
  std::optional<double> radius_percent;
  bool no_prune = false;
  std::optional<std::uint32_t> size_threshold;
  std::optional<std::size_t> initial_examples;
  bool no_learn = false;
  bool no_deduce = false;
  bool no_factorize = false;
  bool single = false;
  std::optional<double> timeout;
  std::string stats;
  std::uint64_t seed = 0;
};

int run_solve(const SolveArgs& a) {
  SynthesisTask task = load_task(a.task);
  std::vector<std::string> names = split_list(a.metrics);
  for (const auto& n : names)
    if (!metric_supports(n, task.logic)) throw std::invalid_argument("metric '" + n + "' is not available for this task");

  SolverConfig base;
  base.prune = !a.no_prune;
  base.precise = a.no_prune;
  base.learn = !a.no_learn;
  base.deduce = !a.no_deduce;
  base.factorize = !a.no_factorize;
  base.size_threshold = a.size_threshold;
  base.initial_examples = a.initial_examples;
  base.seed = a.seed;
  if (a.radius_percent) base.radius = RadiusPolicy::percent(*a.radius_percent);
  if (a.timeout) base.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(*a.timeout * 1000));

  SolveResult res;
  if (a.single) {
    SolverConfig c = base;
    if (a.no_prune) c.metric = "inf";
    else if (!names.empty()) c.metric = names.front();
    if (c.metric == "inf") c.radius.reset();
    res = solve_single(task, c);
  } else {
    std::vector<SolverConfig> cfgs;
    if (names.empty()) {
      for (auto c : default_portfolio(task.logic)) {
        SolverConfig d = base;
        d.metric = c.metric;
        cfgs.push_back(d);
      }
    } else {
      for (const auto& n : names) {
        SolverConfig d = base;
        d.metric = n;
        if (n == "inf") d.radius.reset();
        cfgs.push_back(d);
      }
    }
    if (a.no_prune) cfgs.resize(1);
    res = solve_portfolio(task, cfgs);
  }

  if (!a.stats.empty()) {
    std::ofstream f(a.stats);
    if (!f) throw std::runtime_error("cannot write " + a.stats);
    f << to_json(res).dump(2) << "\n";
  }

  std::uint64_t kept = 0;
  double ms = 0;
  for (const auto& r : res.instances) {
    kept += r.totals().kept;
    ms = std::max(ms, r.wall_ms);
  }
  if (res.solution) {
    std::cout << emit_solution(task, *res.solution) << "\n";
    std::cerr << "solved by " << res.winner << " in " << static_cast<std::int64_t>(ms) << " ms, " << kept
              << " programs kept\n";
    return 0;
  }
  std::cerr << to_string(res.status) << " after " << static_cast<std::int64_t>(ms) << " ms, " << kept
            << " programs kept\n";
  return 1;
}

std::string random_string(std::mt19937_64& rng, std::size_t max_len) {
  static const std::string alphabet = "ab c";
  std::uniform_int_distribution<std::size_t> len(0, max_len), ch(0, alphabet.size() - 1);
  std::string s(len(rng), ' ');
  for (auto& c : s) c = alphabet[ch(rng)];
  return s;
}

int run_check_metric(const std::string& name, std::size_t samples, std::uint32_t width, std::uint64_t seed) {
  bool strings = metric_supports(name, Logic::Strings);
  if (!strings && !metric_supports(name, Logic::BitVectors)) throw std::invalid_argument("unknown metric " + name);
  if (width < 1 || width > 64) throw std::invalid_argument("width must be between 1 and 64");
  std::mt19937_64 rng(seed);
  std::vector<Value> xs;
  ExampleSet ex;
  if (strings) {
    for (std::size_t i = 0; i < samples; ++i) xs.push_back(random_string(rng, 6));
    for (std::size_t i = 0; i < 3; ++i) ex.add({}, xs[i % xs.size()]);
  } else {
    std::uint64_t mask = width == 64 ? ~0ULL : (1ULL << width) - 1;
    if (width <= 10 && (1ULL << width) <= samples) {
      for (std::uint64_t v = 0; v <= mask; ++v) xs.push_back(Value::bv(v, width));
    } else {
      for (std::size_t i = 0; i < samples; ++i) xs.push_back(Value::bv(rng() & mask, width));
    }
    ex.add({}, xs.front());
  }
  MetricPtr m = make_metric(name, strings ? Logic::Strings : Logic::BitVectors, ex, width);
  AxiomReport rep = check_axioms(*m, xs);
  std::cout << name << ": " << xs.size() << " samples, " << rep.triples << " triples, "
            << (rep.ok() ? "all axioms hold" : "violations found") << "\n";
  for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"merlin: example-driven program synthesis with orimetric pruning"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "synthesize a program for a task (.sl or .json)");
  solve->add_option("task", sa.task, "task file")->required();
  solve->add_option("--metrics", sa.metrics, "comma-separated metrics (first one in single-instance mode)");
  auto* rp = solve->add_option("--radius-percent", sa.radius_percent, "ball radius as a percent of the maximum distance");
  auto* np = solve->add_flag("--no-prune", sa.no_prune, "disable ball pruning and use every example");
  rp->excludes(np);
  solve->add_option("--size-threshold", sa.size_threshold, "programs up to this cost bypass the ball");
  solve->add_option("--initial-examples", sa.initial_examples, "examples in the first CEGAR iteration");
  solve->add_flag("--no-learn", sa.no_learn, "do not promote subprograms of spurious candidates");
  solve->add_flag("--no-deduce", sa.no_deduce, "disable top-down deduction");
  solve->add_flag("--no-factorize", sa.no_factorize, "disable observational equivalence");
  solve->add_flag("--single-instance", sa.single, "run one instance instead of the portfolio");
  solve->add_option("--timeout", sa.timeout, "seconds");
  solve->add_option("--stats", sa.stats, "write search statistics as JSON");
  solve->add_option("--seed", sa.seed, "random seed");

  std::string metric;
  std::size_t samples = 40;
  std::uint32_t width = 8;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check-metric", "test the orimetric axioms on random samples");
  check->add_option("name", metric, "metric name")->required();
  check->add_option("--samples", samples, "number of samples");
  check->add_option("--width", width, "bit width for bit-vector metrics");
  check->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*solve) return run_solve(sa);
    return run_check_metric(metric, samples, width, seed);
  } catch (const InputError& e) {
    std::cerr << sa.task << (e.line > 0 ? ":" : ": ") << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
