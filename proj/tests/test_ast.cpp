#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace merlin;
using namespace merlin::testing;

TEST(Program, SizeAndPrinting) {
  Program x = var(0, "x");
  Program p = app(Opcode::StrReplace, {x, str(" City"), str("")});
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.to_string(), "(str.replace x \" City\" \"\")");
  EXPECT_EQ(p.sort(), Sort::string());
}

TEST(Program, StructuralEqualityAndHash) {
  Program a = app(Opcode::StrConcat, {var(0, "x"), str("a")});
  Program b = app(Opcode::StrConcat, {var(0, "x"), str("a")});
  Program c = app(Opcode::StrConcat, {str("a"), var(0, "x")});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_FALSE(a == c);
}

TEST(Program, SubprogramsAreDistinctAndPostOrder) {
  Program x = var(0, "x");
  Program inner = app(Opcode::StrConcat, {x, x});
  Program p = app(Opcode::StrConcat, {inner, x});
  auto subs = subprograms(p);
  ASSERT_EQ(subs.size(), 3u);
  EXPECT_EQ(subs[0], x);
  EXPECT_EQ(subs[1], inner);
  EXPECT_EQ(subs[2], p);
}

TEST(Sketch, SubstituteFillsHolesLeftToRight) {
  Grammar g;
  auto s = g.add_nonterminal("S", Sort::string());
  Sketch sk{app(Opcode::StrConcat, {g.hole(s), g.hole(s)})};
  EXPECT_EQ(sk.holes(), 2u);
  EXPECT_EQ(sk.base_size(), 1u);
  std::vector<Program> fills = {var(0, "x"), str("a")};
  EXPECT_EQ(substitute(sk, fills).to_string(), "(str.++ x \"a\")");
}

TEST(Sketch, SubstituteRejectsWrongCountAndSort) {
  Grammar g;
  auto s = g.add_nonterminal("S", Sort::string());
  Sketch sk{app(Opcode::StrConcat, {g.hole(s), g.hole(s)})};
  std::vector<Program> one = {str("a")};
  EXPECT_THROW(substitute(sk, one), SubstitutionError);
  std::vector<Program> bad = {str("a"), Program::make(Terminal::constant_of(Value(std::int64_t{3})))};
  EXPECT_THROW(substitute(sk, bad), SubstitutionError);
}

TEST(Grammar, DerivableThroughUnitProductions) {
  auto t = parse_sygus(R"((synth-fun f ((x String)) String ((S String) (I String))
  ((S String (I (str.++ S S))) (I String (x "a"))))
(constraint (= (f "q") "qa")))");
  const Grammar& g = t.grammar;
  Program x = var(0, "x");
  Program p = app(Opcode::StrConcat, {x, str("a")});
  EXPECT_TRUE(g.generates(x));
  EXPECT_TRUE(g.generates(p));
  EXPECT_FALSE(g.generates(str("b")));
  EXPECT_EQ(g.derivable(x), NtMask{3});
  EXPECT_EQ(g.derivable(p), NtMask{1});
  EXPECT_EQ(g.unit_ancestors(1), NtMask{3});
  EXPECT_EQ(g.unit_descendants(0), NtMask{3});
}

TEST(Grammar, ValidateReportsArity) {
  Grammar g;
  auto s = g.add_nonterminal("S", Sort::string());
  g.add_production(s, Sketch{Program::make(Terminal::variable(0, "x", Sort::string()))});
  g.add_production(s, Sketch{app(Opcode::StrConcat, {g.hole(s)})});
  auto errs = validate_grammar(g);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_NE(errs[0].find("str.++ expects 2 argument(s), got 1"), std::string::npos) << errs[0];
}

TEST(Grammar, ValidateReportsSortsAndMissingProductions) {
  Grammar g;
  auto s = g.add_nonterminal("S", Sort::string());
  g.add_nonterminal("N", Sort::integer());
  g.add_production(s, Sketch{app(Opcode::StrConcat, {g.hole(s), g.hole(1)})});
  auto errs = validate_grammar(g);
  ASSERT_EQ(errs.size(), 2u);
  EXPECT_NE(errs[0].find("argument 2 of str.++ has sort Int"), std::string::npos) << errs[0];
  EXPECT_NE(errs[1].find("N has no productions"), std::string::npos) << errs[1];
}

TEST(Value, SmtPrinting) {
  EXPECT_EQ(Value(std::string("a\"b")).to_smt(), "\"a\"\"b\"");
  EXPECT_EQ(Value::bv(0xab, 8).to_smt(), "#xab");
  EXPECT_EQ(Value::bv(5, 3).to_smt(), "#b101");
  EXPECT_EQ(Value(std::int64_t{-4}).to_smt(), "(- 4)");
  EXPECT_THROW(Value::bv(0, 65), std::invalid_argument);
}
