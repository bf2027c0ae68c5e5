#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace merlin;
using namespace merlin::testing;

namespace {
Value S(const char* s) { return Value(std::string(s)); }
Value B(std::uint64_t v, std::uint32_t w) { return Value::bv(v, w); }
Dist D(std::int64_t n) { return Dist::from_int(n); }

std::vector<Value> random_strings(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s(rng() % 6, 'a');
    for (auto& c : s) c = static_cast<char>('a' + rng() % 3);
    out.emplace_back(s);
  }
  return out;
}
}  // namespace

TEST(Overview, SuperstringBranchAndPenalty) {
  OverviewMetric m;
  EXPECT_EQ(m.distance(S("POPL Conference"), S("POPL")), D(11));
  EXPECT_EQ(m.distance(S("POPL"), S("PO")), D(2));
  EXPECT_EQ(m.distance(S("PO"), S("POPL")), D(102));
  EXPECT_EQ(m.aggregation(), Aggregation::Max);
}

TEST(Overview, LiftedDistance) {
  auto m = std::make_shared<OverviewMetric>();
  OutputVector x = {S("POPL Conference"), S("Rennes City")};
  OutputVector gt = {S("POPL"), S("Rennes")};
  EXPECT_EQ(LiftedOrimetric(m, {0}).distance(x, gt), D(11));
  EXPECT_EQ(LiftedOrimetric(m, {0, 1}, Aggregation::Sum).distance(x, gt), D(16));
  EXPECT_EQ(LiftedOrimetric(m, {0, 1}).distance(x, gt), D(11));
  EXPECT_EQ(LiftedOrimetric(m, {0, 1}).distance(gt, gt), Dist::zero());
}

TEST(Concat, Formula) {
  ConcatMetric m(9);
  EXPECT_EQ(m.distance(S("PO"), S("POPL")), D(2));
  EXPECT_EQ(m.distance(S("POPL"), S("POPL")), D(0));
  EXPECT_EQ(m.distance(S("POP"), S("POPL")), D(1));
  EXPECT_EQ(m.distance(S("AB"), S("POPL")), D(9 + 2));
}

TEST(Substr, Formula) {
  SubstrMetric m(9);
  EXPECT_EQ(m.distance(S("POPL Conference"), S("POPL")), D(11));
  EXPECT_EQ(m.distance(S("POPL"), S("POPL")), D(0));
  EXPECT_EQ(m.distance(S("PO"), S("POPL")), D(9 + 2));
}

TEST(Levenshtein, Values) {
  LevenshteinMetric m;
  EXPECT_EQ(m.distance(S("POPL"), S("POPS")), D(1));
  EXPECT_EQ(m.distance(S("POPL"), S("PLDI")), D(3));  // hand-checked DP table
  EXPECT_EQ(m.distance(S(""), S("abc")), D(3));
}

TEST(Levenshtein, BoundedAgreesBelowBound) {
  std::vector<Value> targets = {S("abcab"), S("")};
  LevenshteinMetric m(targets);
  auto xs = random_strings(300, 5);
  for (const auto& t : targets)
    for (const auto& x : xs)
      for (std::int64_t b = 1; b <= 6; ++b) {
        Dist exact = m.distance(x, t);
        Dist got = m.bounded(x, t, D(b));
        if (exact < D(b)) EXPECT_EQ(got, exact);
        else EXPECT_GE(got, D(b));
      }
}

TEST(Automaton, SmallCases) {
  LevenshteinAutomaton a("POPL", 1);
  EXPECT_TRUE(a.accepts("POPL"));
  EXPECT_FALSE(a.accepts("POPS"));
  LevenshteinAutomaton e("", 2);
  EXPECT_TRUE(e.accepts("A"));
  EXPECT_FALSE(e.accepts("AB"));
  EXPECT_THROW(LevenshteinAutomaton("x", 5), std::invalid_argument);
}

TEST(BitVector, AndOrMul) {
  const std::int64_t c = 6;
  AndMetric a(4, c);
  EXPECT_EQ(a.distance(B(0b1101, 4), B(0b0101, 4)), D(1));
  EXPECT_EQ(a.distance(B(0b0100, 4), B(0b0101, 4)), D(c));
  EXPECT_EQ(a.distance(B(0xf, 4), B(0xf, 4)), D(0));
  OrMetric o(4, c);
  EXPECT_EQ(o.distance(B(0b0001, 4), B(0b0101, 4)), D(1));
  EXPECT_EQ(o.distance(B(0b1000, 4), B(0b0101, 4)), D(c));
  MulMetric mu(8, 10);
  EXPECT_EQ(mu.distance(B(0b00001100, 8), B(0b00000011, 8)), D(3));
  EXPECT_EQ(mu.distance(B(0b00000011, 8), B(0b00001100, 8)), D(10));
  EXPECT_EQ(mu.distance(B(7, 8), B(7, 8)), D(0));
}

TEST(BitVector, Hamming) {
  HammingMetric h(64);
  EXPECT_EQ(h.distance(B(0, 64), B(~0ULL, 64)), D(1));
  EXPECT_EQ(h.distance(B(0, 64), B((1ULL << 40) - 1, 64)), D(25));
  EXPECT_EQ(h.distance(B(0, 64), B(0, 64)), D(0));
}

TEST(MaxDistance, Catalog) {
  ExampleSet bv;
  bv.add({B(0, 4)}, B(0b0101, 4));
  auto and4 = make_metric("and", Logic::BitVectors, bv, 4);
  EXPECT_EQ(LiftedOrimetric(and4, {0}).max_distance(bv.outputs), D(2));

  ExampleSet s;
  s.add({S("a")}, S("POPL"));
  s.add({S("b")}, S("PL"));
  s.add({S("c")}, S("Q"));
  auto lv = make_metric("lvst", Logic::Strings, s, 0);
  EXPECT_EQ(LiftedOrimetric(lv, {0, 1, 2}).max_distance(s.outputs), D(12));
  auto cc = make_metric("concat", Logic::Strings, s, 0);
  EXPECT_EQ(LiftedOrimetric(cc, {0, 1}).max_distance(s.outputs), D(6));
  EXPECT_EQ(cc->failure_constant(), D(1 + 4 + 2 + 1));
  EXPECT_THROW(make_metric("mul", Logic::Strings, s, 0), std::invalid_argument);
}

TEST(Radius, Policies) {
  ExampleSet s;
  s.add({S("a")}, S("POPL"));
  LiftedOrimetric lv(make_metric("lvst", Logic::Strings, s, 0), {0});
  EXPECT_EQ(resolve_radius(RadiusPolicy::percent(50), lv, s.outputs), D(2));
  EXPECT_EQ(resolve_radius(RadiusPolicy::percent(0), lv, s.outputs), Dist::epsilon());
  EXPECT_FALSE(resolve_radius(RadiusPolicy::none(), lv, s.outputs));
  EXPECT_THROW(resolve_radius(RadiusPolicy::failure_constant(), lv, s.outputs), std::invalid_argument);
  EXPECT_EQ(RadiusPolicy::percent(100).to_string(), "100%");
}

TEST(Axioms, RandomStringMetricsHold) {
  auto xs = random_strings(60, 11);
  const std::int64_t c = 1 + 5 * 60;
  EXPECT_TRUE(check_axioms(OverviewMetric(), xs).ok());
  EXPECT_TRUE(check_axioms(ConcatMetric(c), xs).ok());
  EXPECT_TRUE(check_axioms(SubstrMetric(c), xs).ok());
  EXPECT_TRUE(check_axioms(LevenshteinMetric(), xs).ok());
}

TEST(Axioms, ExhaustiveWidth4) {
  std::vector<Value> xs;
  for (std::uint64_t v = 0; v < 16; ++v) xs.push_back(B(v, 4));
  const std::int64_t c = 1 + 5;
  std::vector<MetricPtr> ms = {std::make_shared<AndMetric>(4, c), std::make_shared<OrMetric>(4, c),
                               std::make_shared<MulMetric>(4, c), std::make_shared<HammingMetric>(4)};
  for (const auto& m : ms) {
    auto rep = check_axioms(*m, xs);
    EXPECT_TRUE(rep.ok()) << m->name() << ": " << (rep.violations.empty() ? "" : rep.violations[0]);
    EXPECT_EQ(rep.triples, 16u * 16u * 16u);
  }
}

TEST(Axioms, SmallFailureConstantBreaksAnd) {
  // 0111 -> 1000 -> 0000 costs c + 1 against a direct distance of 3
  std::vector<Value> xs;
  for (std::uint64_t v = 0; v < 16; ++v) xs.push_back(B(v, 4));
  EXPECT_FALSE(check_axioms(AndMetric(4, 1), xs).ok());
  EXPECT_TRUE(check_axioms(AndMetric(4, 2), xs).ok());
}

namespace {
class BrokenMetric final : public DataOrimetric {
 public:
  std::string name() const override { return "broken"; }
  Dist distance(const Value&, const Value&) const override { return D(1); }
  Dist max_distance(const Value&) const override { return D(1); }
};
}  // namespace

TEST(Axioms, BrokenMetricReportsReflexivity) {
  std::vector<Value> xs = {S("a"), S("b")};
  auto rep = check_axioms(BrokenMetric(), xs);
  ASSERT_FALSE(rep.ok());
  EXPECT_NE(rep.violations[0].find("reflexivity"), std::string::npos);
}
