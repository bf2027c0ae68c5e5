#pragma once

#include <bit>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "merlin/ast.hpp"
#include "merlin/value.hpp"

namespace merlin {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string substr_smt(const std::string& s, std::int64_t i, std::int64_t n) {
  auto len = static_cast<std::int64_t>(s.size());
  if (i < 0 || i >= len || n <= 0) return {};
  return s.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(std::min(n, len - i)));
}

inline std::string replace_smt(const std::string& s, const std::string& t, const std::string& u) {
  if (t.empty()) return u + s;
  auto pos = s.find(t);
  if (pos == std::string::npos) return s;
  return s.substr(0, pos) + u + s.substr(pos + t.size());
}

inline bool msb(std::uint64_t x, std::uint32_t w) { return (x >> (w - 1)) & 1; }

inline std::uint64_t udiv(std::uint64_t s, std::uint64_t t, std::uint32_t w) { return t == 0 ? width_mask(w) : s / t; }
inline std::uint64_t urem(std::uint64_t s, std::uint64_t t) { return t == 0 ? s : s % t; }
inline std::uint64_t neg(std::uint64_t x, std::uint32_t w) { return (~x + 1) & width_mask(w); }

inline std::uint64_t sdiv(std::uint64_t s, std::uint64_t t, std::uint32_t w) {
  bool ns = msb(s, w), nt = msb(t, w);
  if (!ns && !nt) return udiv(s, t, w);
  if (ns && !nt) return neg(udiv(neg(s, w), t, w), w);
  if (!ns && nt) return neg(udiv(s, neg(t, w), w), w);
  return udiv(neg(s, w), neg(t, w), w);
}

inline std::uint64_t srem(std::uint64_t s, std::uint64_t t, std::uint32_t w) {
  bool ns = msb(s, w), nt = msb(t, w);
  if (!ns && !nt) return urem(s, t);
  if (ns && !nt) return neg(urem(neg(s, w), t), w);
  if (!ns && nt) return urem(s, neg(t, w));
  return neg(urem(neg(s, w), neg(t, w)), w);
}

}  // namespace detail

inline Value apply_op(Opcode op, std::span<const Value> a) {
  const auto& info = op_info(op);
  if (a.size() != info.args.size()) throw EvalError("wrong number of arguments to " + std::string(info.name));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].sort().kind != info.args[i]) throw EvalError("ill-sorted argument to " + std::string(info.name));

  switch (op) {
    case Opcode::StrConcat: return Value(a[0].str() + a[1].str());
    case Opcode::StrReplace: return Value(detail::replace_smt(a[0].str(), a[1].str(), a[2].str()));
    case Opcode::StrSubstr: return Value(detail::substr_smt(a[0].str(), a[1].integer(), a[2].integer()));
    case Opcode::StrAt: return Value(detail::substr_smt(a[0].str(), a[1].integer(), 1));
    case Opcode::StrLen: return Value(static_cast<std::int64_t>(a[0].str().size()));
    case Opcode::IntToStr: return Value(a[0].integer() >= 0 ? std::to_string(a[0].integer()) : std::string{});
    case Opcode::IntAdd: return Value(a[0].integer() + a[1].integer());
    case Opcode::IntSub: return Value(a[0].integer() - a[1].integer());
    default: break;
  }

  std::uint32_t w = a[0].bv().width;
  for (const auto& v : a)
    if (v.bv().width != w) throw EvalError("bit-vector width mismatch in " + std::string(info.name));
  std::uint64_t x = a[0].bits();
  std::uint64_t y = a.size() > 1 ? a[1].bits() : 0;
  auto mk = [w](std::uint64_t b) { return Value::bv(b, w); };
  switch (op) {
    case Opcode::BvNot: return mk(~x);
    case Opcode::BvNeg: return mk(detail::neg(x, w));
    case Opcode::BvAnd: return mk(x & y);
    case Opcode::BvOr: return mk(x | y);
    case Opcode::BvXor: return mk(x ^ y);
    case Opcode::BvAdd: return mk(x + y);
    case Opcode::BvSub: return mk(x - y);
    case Opcode::BvMul: return mk(x * y);
    case Opcode::BvUdiv: return mk(detail::udiv(x, y, w));
    case Opcode::BvUrem: return mk(detail::urem(x, y));
    case Opcode::BvSdiv: return mk(detail::sdiv(x, y, w));
    case Opcode::BvSrem: return mk(detail::srem(x, y, w));
    case Opcode::BvShl: return mk(y >= w ? 0 : x << y);
    case Opcode::BvLshr: return mk(y >= w ? 0 : x >> y);
    case Opcode::BvAshr: {
      bool sign = detail::msb(x, w);
      if (y >= w) return mk(sign ? width_mask(w) : 0);
      std::uint64_t r = x >> y;
      if (sign && y > 0) r |= width_mask(w) & ~(width_mask(w) >> y);
      return mk(r);
    }
    default: break;
  }
  throw EvalError("unsupported operator");
}

// Inputs bound to the function parameters, by position.
using Assignment = std::vector<Value>;

inline Value eval(const Program& p, const Assignment& env) {
  const Terminal& t = p.head();
  switch (t.kind) {
    case Terminal::Kind::Constant: return t.constant;
    case Terminal::Kind::Variable:
      if (t.index >= env.size()) throw EvalError("unbound variable " + t.name);
      return env[t.index];
    case Terminal::Kind::Hole: throw EvalError("cannot evaluate a hole");
    case Terminal::Kind::Operator: break;
  }
  std::vector<Value> args;
  args.reserve(p.children().size());
  for (const auto& c : p.children()) args.push_back(eval(c, env));
  return apply_op(t.op, args);
}

struct ExampleSet {
  std::vector<Assignment> inputs;
  std::vector<Value> outputs;

  std::size_t size() const { return outputs.size(); }
  void add(Assignment in, Value out) {
    inputs.push_back(std::move(in));
    outputs.push_back(std::move(out));
  }
  // examples must have pairwise distinct inputs
  void validate() const {
    if (inputs.size() != outputs.size()) throw std::invalid_argument("example inputs and outputs differ in count");
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (std::size_t j = i + 1; j < inputs.size(); ++j)
        if (inputs[i] == inputs[j]) throw std::invalid_argument("examples " + std::to_string(i) + " and " +
                                                                std::to_string(j) + " share the same input");
  }
};

inline OutputVector output_vector(const Program& p, const ExampleSet& ex) {
  OutputVector out;
  out.reserve(ex.size());
  for (const auto& in : ex.inputs) out.push_back(eval(p, in));
  return out;
}

inline bool satisfies(const Program& p, const ExampleSet& ex) {
  for (std::size_t i = 0; i < ex.size(); ++i) {
    try {
      if (!(eval(p, ex.inputs[i]) == ex.outputs[i])) return false;
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

// Output vector of a production applied to the output vectors of its hole fillers.
inline OutputVector eval_sketch(const Sketch& s, std::span<const OutputVector* const> fills, const ExampleSet& ex) {
  const Program& root = s.tree;
  const std::size_t n_examples = ex.size();
  OutputVector out(n_examples);
  bool flat = root.head().kind == Terminal::Kind::Operator && root.children().size() == fills.size();
  if (flat)
    for (const auto& c : root.children()) flat = flat && c.head().kind == Terminal::Kind::Hole;
  if (flat) {
    std::vector<Value> args(fills.size());
    for (std::size_t e = 0; e < n_examples; ++e) {
      for (std::size_t k = 0; k < fills.size(); ++k) args[k] = (*fills[k])[e];
      out[e] = apply_op(root.head().op, args);
    }
    return out;
  }
  for (std::size_t e = 0; e < n_examples; ++e) {
    std::size_t next = 0;
    auto visit = [&](auto&& self, const Program& q) -> Value {
      const Terminal& t = q.head();
      if (t.kind == Terminal::Kind::Hole) return (*fills[next++])[e];
      if (t.kind == Terminal::Kind::Constant) return t.constant;
      if (t.kind == Terminal::Kind::Variable) return ex.inputs[e].at(t.index);
      std::vector<Value> args;
      for (const auto& c : q.children()) args.push_back(self(self, c));
      return apply_op(t.op, args);
    };
    out[e] = visit(visit, root);
  }
  return out;
}

}  // namespace merlin
