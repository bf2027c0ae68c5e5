#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace merlin;
using namespace merlin::testing;

namespace {
Value run(Opcode op, std::vector<Value> args) { return apply_op(op, args); }
Value S(const char* s) { return Value(std::string(s)); }
Value I(std::int64_t i) { return Value(i); }
Value B(std::uint64_t v, std::uint32_t w = 8) { return Value::bv(v, w); }
}  // namespace

TEST(StringOps, Replace) {
  EXPECT_EQ(run(Opcode::StrReplace, {S("POPL Conference"), S(" Conference"), S("")}), S("POPL"));
  EXPECT_EQ(run(Opcode::StrReplace, {S("aaa"), S("a"), S("b")}), S("baa"));  // first occurrence only
  EXPECT_EQ(run(Opcode::StrReplace, {S("abc"), S("x"), S("y")}), S("abc"));
  EXPECT_EQ(run(Opcode::StrReplace, {S("abc"), S(""), S("z")}), S("zabc"));
}

TEST(StringOps, SubstrOutOfRange) {
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(1), I(3)}), S("ell"));
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(3), I(10)}), S("lo"));
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(5), I(1)}), S(""));
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(-1), I(2)}), S(""));
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(0), I(0)}), S(""));
  EXPECT_EQ(run(Opcode::StrSubstr, {S("hello"), I(0), I(-2)}), S(""));
}

TEST(StringOps, AtLenFromInt) {
  EXPECT_EQ(run(Opcode::StrAt, {S("abc"), I(1)}), S("b"));
  EXPECT_EQ(run(Opcode::StrAt, {S("abc"), I(3)}), S(""));
  EXPECT_EQ(run(Opcode::StrLen, {S("abc")}), I(3));
  EXPECT_EQ(run(Opcode::IntToStr, {I(42)}), S("42"));
  EXPECT_EQ(run(Opcode::IntToStr, {I(-1)}), S(""));
}

TEST(BvOps, DivisionByZero) {
  EXPECT_EQ(run(Opcode::BvUdiv, {B(7), B(0)}), B(0xff));
  EXPECT_EQ(run(Opcode::BvUrem, {B(7), B(0)}), B(7));
  EXPECT_EQ(run(Opcode::BvSdiv, {B(7), B(0)}), B(0xff));
  EXPECT_EQ(run(Opcode::BvSdiv, {B(0xf9), B(0)}), B(1));  // -7 / 0 = 1
  EXPECT_EQ(run(Opcode::BvSrem, {B(0xf9), B(0)}), B(0xf9));
}

TEST(BvOps, SignedDivisionRoundsTowardZero) {
  EXPECT_EQ(run(Opcode::BvSdiv, {B(0xf9), B(2)}), B(0xfd));  // -7 / 2 = -3
  EXPECT_EQ(run(Opcode::BvSrem, {B(0xf9), B(2)}), B(0xff));  // -7 rem 2 = -1
  EXPECT_EQ(run(Opcode::BvSdiv, {B(0x80), B(0xff)}), B(0x80));
}

TEST(BvOps, ShiftsAndArithmetic) {
  EXPECT_EQ(run(Opcode::BvShl, {B(0x81), B(1)}), B(0x02));
  EXPECT_EQ(run(Opcode::BvLshr, {B(0x81), B(8)}), B(0));
  EXPECT_EQ(run(Opcode::BvAshr, {B(0x81), B(9)}), B(0xff));
  EXPECT_EQ(run(Opcode::BvAshr, {B(0x41), B(1)}), B(0x20));
  EXPECT_EQ(run(Opcode::BvAdd, {B(0xff), B(2)}), B(1));
  EXPECT_EQ(run(Opcode::BvMul, {B(16), B(16)}), B(0));
  EXPECT_EQ(run(Opcode::BvNeg, {B(1)}), B(0xff));
  EXPECT_EQ(run(Opcode::BvNot, {B(0x0f)}), B(0xf0));
  EXPECT_EQ(run(Opcode::BvSub, {B(0), B(1)}), B(0xff));
  EXPECT_EQ(run(Opcode::BvShl, {Value::bv(1, 64), Value::bv(63, 64)}), Value::bv(1ULL << 63, 64));
}

TEST(Eval, ProgramOverExamples) {
  auto t = load_task(task_path("overview.sl"));
  Program x = var(0, "x");
  Program p = app(Opcode::StrReplace, {app(Opcode::StrReplace, {x, str(" Conference"), str("")}), str(" City"), str("")});
  EXPECT_TRUE(satisfies(p, t.examples));
  EXPECT_FALSE(satisfies(x, t.examples));
  auto out = output_vector(app(Opcode::StrReplace, {x, str(" Conference"), str("")}), t.examples);
  EXPECT_EQ(out[1], S("Rennes City"));
}

TEST(Eval, SketchFastPathMatchesFullEvaluation) {
  auto t = load_task(task_path("overview.sl"));
  const auto& g = t.grammar;
  Program x = var(0, "x");
  OutputVector ox = output_vector(x, t.examples), oc = output_vector(str(" City"), t.examples);
  for (const auto& prod : g.productions()) {
    if (prod.rhs.holes() == 0 || prod.rhs.is_unit()) continue;
    std::vector<const OutputVector*> fills;
    std::vector<Program> args;
    for (std::size_t i = 0; i < prod.rhs.holes(); ++i) {
      fills.push_back(i % 2 ? &oc : &ox);
      args.push_back(i % 2 ? str(" City") : x);
    }
    EXPECT_EQ(eval_sketch(prod.rhs, fills, t.examples), output_vector(substitute(prod.rhs, args), t.examples));
  }
}

TEST(Examples, DuplicateInputsRejected) {
  ExampleSet ex;
  ex.add({S("a")}, S("b"));
  ex.add({S("a")}, S("c"));
  EXPECT_THROW(ex.validate(), std::invalid_argument);
}
