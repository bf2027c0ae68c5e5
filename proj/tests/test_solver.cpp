#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace merlin;
using namespace merlin::testing;

namespace {
using Counts = std::vector<std::uint64_t>;
SynthesisTask overview() { return load_task(task_path("overview.sl")); }

Counts levels(const IterationRecord& it) {
  Counts k = it.stats.kept_per_cost;
  return {k.begin() + 1, k.end()};
}
}  // namespace

TEST(Solver, OverviewWithLearning) {
  SolverConfig c;
  c.metric = "overview";
  c.deduce = false;
  c.size_threshold = 1;
  auto rep = solve_instance(overview(), c);
  ASSERT_EQ(rep.status, SolveStatus::Solved);
  ASSERT_EQ(rep.iterations.size(), 2u);
  EXPECT_EQ(levels(rep.iterations[0]), (Counts{4, 0, 5, 3}));
  EXPECT_EQ(levels(rep.iterations[1]), (Counts{5, 0, 12, 10}));
  EXPECT_EQ(rep.totals().kept, 39u);
  EXPECT_EQ(rep.iterations[0].candidate->to_string(), "(str.replace x \" Conference\" \"\")");
  EXPECT_EQ(rep.iterations[1].examples, (IndexSet{0, 1}));
  EXPECT_TRUE(satisfies(*rep.solution, overview().examples));
}

TEST(Solver, OverviewWithoutLearningNeedsMore) {
  SolverConfig c;
  c.metric = "overview";
  c.deduce = false;
  c.learn = false;
  c.size_threshold = 1;
  auto rep = solve_instance(overview(), c);
  ASSERT_EQ(rep.status, SolveStatus::Solved);
  EXPECT_GT(rep.totals().kept, 39u);
}

TEST(Solver, SubstrSolvesOverview) {
  auto t = overview();
  SolverConfig c;
  c.metric = "substr";
  auto res = solve_single(t, c);
  ASSERT_EQ(res.status, SolveStatus::Solved);
  EXPECT_TRUE(verify(*res.solution, t));
  EXPECT_EQ(res.winner, "substr");
}

TEST(Solver, ConcatBallExcludesOverviewSolution) {
  // every replace(x, ...) keeps " City" on some example, so nothing useful is learned
  auto res = solve_single(overview(), SolverConfig{});
  EXPECT_EQ(res.status, SolveStatus::Exhausted);
  EXPECT_EQ(res.instances[0].cegar_iterations(), 2u);
}

TEST(Solver, IntegerHelpersAreNotPruned) {
  // str.at needs Int subterms, which the string ball cannot measure
  auto t = load_task(task_path("strings/first_char.sl"));
  for (const char* m : {"concat", "substr", "lvst"}) {
    SolverConfig c;
    c.metric = m;
    c.deduce = false;
    auto res = solve_single(t, c);
    ASSERT_EQ(res.status, SolveStatus::Solved) << m;
    EXPECT_TRUE(verify(*res.solution, t));
  }
}

TEST(Solver, ExhaustsFiniteSpace) {
  auto t = parse_sygus(R"((synth-fun f ((x String)) String ((S String (x "a" (str.++ x "a")))))
(constraint (= (f "q") "zz")))");
  auto rep = solve_instance(t, SolverConfig{});
  EXPECT_EQ(rep.status, SolveStatus::Exhausted);
  EXPECT_FALSE(rep.solution);
}

TEST(Solver, TimesOut) {
  auto t = parse_sygus(R"((synth-fun f ((x String)) String ((S String (x "a" "b" "c" (str.++ S S) (str.replace S S S)))))
(constraint (= (f "q") "the quick brown fox jumps"))
(constraint (= (f "r") "over the lazy dog")))");
  SolverConfig c;
  c.metric = "inf";
  c.timeout = std::chrono::milliseconds(100);
  auto rep = solve_instance(t, c);
  EXPECT_EQ(rep.status, SolveStatus::Timeout);
  EXPECT_LT(rep.wall_ms, 2000.0);
}

TEST(Solver, ProgressCheckFlagsRepeats) {
  Program x = var(0, "x");
  EXPECT_FALSE(progress_check({x, str("a")}));
  EXPECT_TRUE(progress_check({x, str("a"), x}));
}

TEST(Solver, ValuableSubprogramsRespectBall) {
  auto t = overview();
  LiftedOrimetric m(make_metric("overview", t.logic, t.examples, t.width), {0, 1, 2, 3});
  Program inner = app(Opcode::StrReplace, {var(0, "x"), str(" Conference"), str("")});
  Program outer = app(Opcode::StrConcat, {inner, str(" City")});
  auto in_ball = valuable_subprograms(outer, t.examples, m, Dist::from_int(100));
  ASSERT_EQ(in_ball.size(), 2u);
  EXPECT_EQ(in_ball[0], inner);
  EXPECT_EQ(valuable_subprograms(outer, t.examples, m, Dist::from_int(10)).size(), 1u);
  EXPECT_EQ(valuable_subprograms(outer, t.examples, m, std::nullopt).size(), 2u);
}

TEST(Portfolio, SolvesOverview) {
  auto t = overview();
  auto res = solve_portfolio(t, default_portfolio(t.logic));
  ASSERT_EQ(res.status, SolveStatus::Solved);
  EXPECT_TRUE(verify(*res.solution, t));
  EXPECT_FALSE(res.winner.empty());
  EXPECT_EQ(res.instances.size(), 4u);  // concat, substr, lvst, inf
  EXPECT_EQ(res.instances.back().metric, "inf");
}

TEST(Portfolio, CapKeepsNonPruningInstance) {
  auto t = overview();
  auto res = solve_portfolio(t, default_portfolio(t.logic), 2);
  ASSERT_EQ(res.instances.size(), 2u);
  EXPECT_EQ(res.instances[0].metric, "concat");
  EXPECT_EQ(res.instances[1].metric, "inf");
  EXPECT_EQ(res.status, SolveStatus::Solved);
}

TEST(Portfolio, BitVectorTask) {
  // f(x) = (x & 0xf0) | 0x03
  auto t = parse_sygus(R"((synth-fun f ((x (_ BitVec 8))) (_ BitVec 8)
  ((S (_ BitVec 8) (x #xf0 #x03 #x01 (bvand S S) (bvor S S) (bvadd S S) (bvnot S)))))
(constraint (= (f #x12) #x13))
(constraint (= (f #xff) #xf3))
(constraint (= (f #x80) #x83))
(constraint (= (f #x0c) #x03)))");
  auto res = solve_portfolio(t, default_portfolio(t.logic));
  ASSERT_EQ(res.status, SolveStatus::Solved);
  EXPECT_TRUE(verify(*res.solution, t));
  EXPECT_EQ(res.instances.size(), 5u);
}

TEST(Portfolio, InstancesStopAfterWinner) {
  auto t = overview();
  auto res = solve_portfolio(t, default_portfolio(t.logic));
  for (const auto& r : res.instances)
    EXPECT_TRUE(r.status == SolveStatus::Solved || r.status == SolveStatus::Cancelled ||
                r.status == SolveStatus::Exhausted) << r.metric << " " << to_string(r.status);
}
