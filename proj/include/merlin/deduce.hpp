#pragma once

#include <optional>
#include <string>
#include <vector>

#include "merlin/enumerator.hpp"
#include "merlin/metrics_bv.hpp"
#include "merlin/semantics.hpp"

namespace merlin {

enum class SketchKind {
  BvAnd, BvOr, BvAdd, BvXor, BvMul, BvNotAdd, BvNegAdd, BvNotXor, BvNegXor,
  StrConcat, StrReplace, StrSubstr,
};

inline const std::vector<SketchKind>& all_sketches() {
  static const std::vector<SketchKind> all = {
      SketchKind::BvAnd,    SketchKind::BvOr,     SketchKind::BvAdd,     SketchKind::BvXor,
      SketchKind::BvMul,    SketchKind::BvNotAdd, SketchKind::BvNegAdd,  SketchKind::BvNotXor,
      SketchKind::BvNegXor, SketchKind::StrConcat, SketchKind::StrReplace, SketchKind::StrSubstr};
  return all;
}

inline std::string sketch_name(SketchKind k) {
  switch (k) {
    case SketchKind::BvAnd: return "and";
    case SketchKind::BvOr: return "or";
    case SketchKind::BvAdd: return "add";
    case SketchKind::BvXor: return "xor";
    case SketchKind::BvMul: return "mul";
    case SketchKind::BvNotAdd: return "not-add";
    case SketchKind::BvNegAdd: return "neg-add";
    case SketchKind::BvNotXor: return "not-xor";
    case SketchKind::BvNegXor: return "neg-xor";
    case SketchKind::StrConcat: return "str-concat";
    case SketchKind::StrReplace: return "str-replace";
    case SketchKind::StrSubstr: return "str-substr";
  }
  return "?";
}

inline bool is_bv_sketch(SketchKind k) { return k < SketchKind::StrConcat; }

// Sketches a metric deduces on when it runs inside a portfolio: its own
// sketch if it has one, otherwise every sketch no metric is dedicated to.
inline std::vector<SketchKind> sketches_for_metric(const std::string& metric, bool strings) {
  if (metric == "concat") return {SketchKind::StrConcat};
  if (metric == "substr") return {SketchKind::StrSubstr};
  if (metric == "and") return {SketchKind::BvAnd};
  if (metric == "or") return {SketchKind::BvOr};
  if (metric == "mul") return {SketchKind::BvMul};
  if (strings) return {SketchKind::StrReplace};
  return {SketchKind::BvAdd, SketchKind::BvXor, SketchKind::BvNotAdd,
          SketchKind::BvNegAdd, SketchKind::BvNotXor, SketchKind::BvNegXor};
}

// Solutions x of a bit-vector equation, as x & care == value.
struct BvSolutions {
  std::uint64_t care = 0;
  std::uint64_t value = 0;
  bool admits(std::uint64_t x) const { return (x & care) == value; }
};

namespace detail {
// inverse of an odd number modulo 2^64 (Newton iteration)
inline std::uint64_t odd_inverse(std::uint64_t a) {
  std::uint64_t x = a;
  for (int i = 0; i < 6; ++i) x *= 2 - a * x;
  return x;
}
}  // namespace detail

// All x with op_p * x == o (mod 2^w).
inline std::optional<BvSolutions> solve_mul(std::uint64_t a, std::uint64_t o, std::uint32_t w) {
  std::uint64_t m = width_mask(w);
  a &= m;
  o &= m;
  std::uint32_t t = bits::tz(a, w);
  if (bits::tz(o, w) < t) return std::nullopt;
  if (t == w) return BvSolutions{0, 0};
  std::uint64_t care = width_mask(w - t);
  std::uint64_t x = ((o >> t) * detail::odd_inverse(a >> t)) & care;
  return BvSolutions{care, x};
}

// Solutions for the argument next to a known argument with value a, so that
// the sketch evaluates to o. Every listed sketch is symmetric in its arguments.
inline std::optional<BvSolutions> bv_inverse(SketchKind k, std::uint64_t a, std::uint64_t o, std::uint32_t w) {
  std::uint64_t m = width_mask(w);
  a &= m;
  o &= m;
  auto exact = [m](std::uint64_t v) { return BvSolutions{m, v & m}; };
  switch (k) {
    case SketchKind::BvAnd:
      // bits set in o must be set in x; bits set in a but not in o must be clear
      if (!bits::below(o, a)) return std::nullopt;
      return BvSolutions{(o | a) & m, o};
    case SketchKind::BvOr:
      if (!bits::below(a, o)) return std::nullopt;
      return BvSolutions{(~a | ~o) & m, o & ~a & m};
    case SketchKind::BvAdd: return exact(o - a);
    case SketchKind::BvXor: return exact(o ^ a);
    case SketchKind::BvMul: return solve_mul(a, o, w);
    case SketchKind::BvNotAdd: return exact(~o - a);
    case SketchKind::BvNegAdd: return exact((~o + 1) - a);
    case SketchKind::BvNotXor: return exact(~o ^ a);
    case SketchKind::BvNegXor: return exact((~o + 1) ^ a);
    default: return std::nullopt;
  }
}

inline std::uint64_t bv_forward(SketchKind k, std::uint64_t a, std::uint64_t x, std::uint32_t w) {
  std::uint64_t m = width_mask(w);
  switch (k) {
    case SketchKind::BvAnd: return a & x & m;
    case SketchKind::BvOr: return (a | x) & m;
    case SketchKind::BvAdd: return (a + x) & m;
    case SketchKind::BvXor: return (a ^ x) & m;
    case SketchKind::BvMul: return (a * x) & m;
    case SketchKind::BvNotAdd: return ~(a + x) & m;
    case SketchKind::BvNegAdd: return (~(a + x) + 1) & m;
    case SketchKind::BvNotXor: return ~(a ^ x) & m;
    case SketchKind::BvNegXor: return (~(a ^ x) + 1) & m;
    default: return 0;
  }
}

// Completes sketches around a freshly kept program using the bank.
class Deducer {
 public:
  static constexpr std::size_t kScanLimit = 1u << 16;

  Deducer(const Grammar& g, const ExampleSet& ex, std::vector<SketchKind> kinds) : g_(g), ex_(ex) {
    // productions whose left-hand side the start symbol reaches through unit rules
    NtMask reachable = g.unit_descendants(g.start());
    for (auto k : kinds) collect(k, reachable);
  }

  bool empty() const { return rules_.empty(); }

  // A program satisfying every example, built around entry id, if the bank allows.
  std::optional<Program> deduce(const ProgramBank& bank, EntryId id) const {
    for (const auto& r : rules_) {
      for (std::size_t pos = 0; pos < r.args.size(); ++pos) {
        if (!(bank[id].reps >> r.args[pos] & 1)) continue;
        std::optional<Program> q;
        if (is_bv_sketch(r.kind)) q = deduce_bv(r, bank, id, pos);
        else if (r.kind == SketchKind::StrConcat) q = deduce_concat(r, bank, id, pos);
        else if (r.kind == SketchKind::StrReplace) q = deduce_replace(r, bank, id, pos);
        else q = deduce_substr(r, bank, id, pos);
        if (q) return q;
      }
    }
    return std::nullopt;
  }

 private:
  struct Rule {
    SketchKind kind;
    const Production* outer = nullptr;  // bvnot / bvneg wrapper
    const Production* inner = nullptr;
    std::vector<NonterminalId> args;
  };

  static bool flat(const Production& p, Opcode op) {
    const auto& t = p.rhs.tree;
    if (t.head().kind != Terminal::Kind::Operator || t.head().op != op) return false;
    for (const auto& c : t.children())
      if (c.head().kind != Terminal::Kind::Hole) return false;
    return true;
  }

  void collect(SketchKind k, NtMask start_down) {
    auto inner_op = [&]() -> Opcode {
      switch (k) {
        case SketchKind::BvAnd: return Opcode::BvAnd;
        case SketchKind::BvOr: return Opcode::BvOr;
        case SketchKind::BvAdd:
        case SketchKind::BvNotAdd:
        case SketchKind::BvNegAdd: return Opcode::BvAdd;
        case SketchKind::BvXor:
        case SketchKind::BvNotXor:
        case SketchKind::BvNegXor: return Opcode::BvXor;
        case SketchKind::BvMul: return Opcode::BvMul;
        case SketchKind::StrConcat: return Opcode::StrConcat;
        case SketchKind::StrReplace: return Opcode::StrReplace;
        case SketchKind::StrSubstr: return Opcode::StrSubstr;
      }
      return Opcode::StrConcat;
    }();
    std::optional<Opcode> outer_op;
    if (k == SketchKind::BvNotAdd || k == SketchKind::BvNotXor) outer_op = Opcode::BvNot;
    if (k == SketchKind::BvNegAdd || k == SketchKind::BvNegXor) outer_op = Opcode::BvNeg;

    const auto& prods = g_.productions();
    for (const auto& in : prods) {
      if (!flat(in, inner_op)) continue;
      auto args = in.rhs.hole_nonterminals();
      if (!outer_op) {
        if (start_down >> in.lhs & 1) rules_.push_back({k, nullptr, &in, args});
        continue;
      }
      for (const auto& out : prods) {
        if (!flat(out, *outer_op) || !(start_down >> out.lhs & 1)) continue;
        NonterminalId x = out.rhs.hole_nonterminals()[0];
        if (g_.unit_descendants(x) >> in.lhs & 1) rules_.push_back({k, &out, &in, args});
      }
    }
  }

  std::optional<Program> assemble(const Rule& r, const ProgramBank& bank, const std::vector<EntryId>& ids) const {
    std::vector<Program> args;
    for (auto i : ids) args.push_back(bank[i].program);
    Program q = substitute(r.inner->rhs, args);
    if (r.outer) q = substitute(r.outer->rhs, std::vector<Program>{q});
    if (!satisfies(q, ex_) || !g_.generates(q)) return std::nullopt;
    return q;
  }

  std::optional<Program> deduce_bv(const Rule& r, const ProgramBank& bank, EntryId id, std::size_t pos) const {
    const auto& op_out = bank[id].outputs;
    std::size_t other = 1 - pos;
    NonterminalId nt = r.args[other];
    std::vector<BvSolutions> sol;
    for (std::size_t e = 0; e < ex_.size(); ++e) {
      std::uint32_t w = ex_.outputs[e].bv().width;
      auto s = bv_inverse(r.kind, op_out[e].bits(), ex_.outputs[e].bits(), w);
      if (!s) return std::nullopt;
      sol.push_back(*s);
    }
    auto fits = [&](EntryId c) {
      for (std::size_t e = 0; e < sol.size(); ++e)
        if (!sol[e].admits(bank[c].outputs[e].bits())) return false;
      return true;
    };
    auto build = [&](EntryId c) {
      std::vector<EntryId> ids(2);
      ids[pos] = id;
      ids[other] = c;
      return assemble(r, bank, ids);
    };
    std::uint32_t w0 = ex_.outputs[0].bv().width;
    std::optional<Program> found;
    if (sol[0].care == width_mask(w0)) {
      bank.for_first(nt, Value::bv(sol[0].value, w0), [&](EntryId c) {
        if (!found && fits(c)) found = build(c);
      });
      return found;
    }
    std::size_t scanned = 0;
    for (EntryId c : bank.members(nt)) {
      if (++scanned > kScanLimit) break;
      if (fits(c) && (found = build(c))) break;
    }
    return found;
  }

  std::optional<Program> deduce_concat(const Rule& r, const ProgramBank& bank, EntryId id, std::size_t pos) const {
    const std::string& op = bank[id].outputs[0].str();
    const std::string& o = ex_.outputs[0].str();
    if (op.size() > o.size()) return std::nullopt;
    std::string need;
    if (pos == 0) {
      if (o.compare(0, op.size(), op) != 0) return std::nullopt;
      need = o.substr(op.size());
    } else {
      if (o.compare(o.size() - op.size(), op.size(), op) != 0) return std::nullopt;
      need = o.substr(0, o.size() - op.size());
    }
    std::optional<Program> found;
    bank.for_first(r.args[1 - pos], Value(need), [&](EntryId c) {
      if (found) return;
      std::vector<EntryId> ids(2);
      ids[pos] = id;
      ids[1 - pos] = c;
      found = assemble(r, bank, ids);
    });
    return found;
  }

  // Try every combination of first-example matches for the two open positions.
  std::optional<Program> pair_lookup(const Rule& r, const ProgramBank& bank, std::vector<EntryId> ids,
                                     std::size_t i, const Value& vi, std::size_t j, const Value& vj) const {
    std::optional<Program> found;
    bank.for_first(r.args[i], vi, [&](EntryId a) {
      if (found) return;
      bank.for_first(r.args[j], vj, [&](EntryId b) {
        if (found) return;
        ids[i] = a;
        ids[j] = b;
        found = assemble(r, bank, ids);
      });
    });
    return found;
  }

  std::optional<Program> deduce_replace(const Rule& r, const ProgramBank& bank, EntryId id, std::size_t pos) const {
    const std::string& v = bank[id].outputs[0].str();
    const std::string& o = ex_.outputs[0].str();
    std::vector<EntryId> ids(3);
    ids[pos] = id;
    if (pos == 0) {
      // v is the haystack: o = v[:k] + u + v[end:]
      std::size_t lcp = 0;
      while (lcp < v.size() && lcp < o.size() && v[lcp] == o[lcp]) ++lcp;
      std::size_t lcs = 0;
      while (lcs < v.size() && lcs < o.size() && v[v.size() - 1 - lcs] == o[o.size() - 1 - lcs]) ++lcs;
      for (std::size_t k = 0; k <= lcp; ++k) {
        for (std::size_t end = std::max(k, v.size() - lcs); end <= v.size(); ++end) {
          std::size_t tail = v.size() - end;
          if (k + tail > o.size()) continue;
          std::string t = v.substr(k, end - k);
          if (t.empty() && k != 0) continue;
          if (!t.empty() && v.find(t) != k) continue;
          std::string u = o.substr(k, o.size() - tail - k);
          if (auto q = pair_lookup(r, bank, ids, 1, Value(t), 2, Value(u))) return q;
        }
      }
      return std::nullopt;
    }
    if (pos == 1) {
      // v is the pattern: h = o[:k] + v + o[k+len:], u = o[k:k+len]
      std::size_t kmax = v.empty() ? 0 : o.size();
      for (std::size_t k = 0; k <= kmax; ++k) {
        for (std::size_t len = 0; k + len <= o.size(); ++len) {
          std::string h = o.substr(0, k) + v + o.substr(k + len);
          std::string u = o.substr(k, len);
          if (auto q = pair_lookup(r, bank, ids, 0, Value(h), 2, Value(u))) return q;
        }
      }
      return std::nullopt;
    }
    // v is the replacement and must occur in o; scan patterns
    std::vector<std::size_t> occ;
    for (auto p = o.find(v); p != std::string::npos; p = o.find(v, p + 1)) {
      occ.push_back(p);
      if (p >= o.size()) break;
    }
    if (occ.empty()) return std::nullopt;
    std::size_t scanned = 0;
    for (EntryId t : bank.members(r.args[1])) {
      if (++scanned > kScanLimit) break;
      const std::string& ts = bank[t].outputs[0].str();
      for (auto k : occ) {
        std::string h = ts.empty() ? o.substr(v.size()) : o.substr(0, k) + ts + o.substr(k + v.size());
        if (ts.empty() && k != 0) continue;
        std::optional<Program> found;
        bank.for_first(r.args[0], Value(h), [&](EntryId hid) {
          if (found) return;
          ids[0] = hid;
          ids[1] = t;
          found = assemble(r, bank, ids);
        });
        if (found) return found;
      }
    }
    return std::nullopt;
  }

  std::optional<Program> deduce_substr(const Rule& r, const ProgramBank& bank, EntryId id, std::size_t pos) const {
    const std::string& o = ex_.outputs[0].str();
    std::vector<EntryId> ids(3);
    ids[pos] = id;
    auto olen = static_cast<std::int64_t>(o.size());
    if (o.empty()) return std::nullopt;

    // lengths that extract o from s at index k
    auto length_fits = [&](std::int64_t k, std::int64_t slen, std::int64_t l) {
      return l == olen || (k + olen == slen && l >= olen);
    };
    auto scan_lengths = [&](std::int64_t k, std::int64_t slen) -> std::optional<Program> {
      std::size_t scanned = 0;
      for (EntryId l : bank.members(r.args[2])) {
        if (++scanned > kScanLimit) break;
        if (!length_fits(k, slen, bank[l].outputs[0].integer())) continue;
        ids[2] = l;
        if (auto q = assemble(r, bank, ids)) return q;
      }
      return std::nullopt;
    };

    if (pos == 0) {
      const std::string& s = bank[id].outputs[0].str();
      auto slen = static_cast<std::int64_t>(s.size());
      for (auto p = s.find(o); p != std::string::npos; p = s.find(o, p + 1)) {
        auto k = static_cast<std::int64_t>(p);
        std::optional<Program> found;
        bank.for_first(r.args[1], Value(k), [&](EntryId ki) {
          if (found) return;
          ids[1] = ki;
          found = scan_lengths(k, slen);
        });
        if (found) return found;
      }
      return std::nullopt;
    }
    if (pos == 1) {
      std::int64_t k = bank[id].outputs[0].integer();
      if (k < 0) return std::nullopt;
      std::size_t scanned = 0;
      for (EntryId s : bank.members(r.args[0])) {
        if (++scanned > kScanLimit) break;
        const std::string& ss = bank[s].outputs[0].str();
        if (k + olen > static_cast<std::int64_t>(ss.size())) continue;
        if (ss.compare(static_cast<std::size_t>(k), o.size(), o) != 0) continue;
        ids[0] = s;
        if (auto q = scan_lengths(k, static_cast<std::int64_t>(ss.size()))) return q;
      }
      return std::nullopt;
    }
    std::int64_t l = bank[id].outputs[0].integer();
    if (l < olen) return std::nullopt;
    std::size_t scanned = 0;
    for (EntryId s : bank.members(r.args[0])) {
      if (++scanned > kScanLimit) break;
      const std::string& ss = bank[s].outputs[0].str();
      auto slen = static_cast<std::int64_t>(ss.size());
      for (auto p = ss.find(o); p != std::string::npos; p = ss.find(o, p + 1)) {
        auto k = static_cast<std::int64_t>(p);
        if (!length_fits(k, slen, l)) continue;
        std::optional<Program> found;
        bank.for_first(r.args[1], Value(k), [&](EntryId ki) {
          if (found) return;
          ids[0] = s;
          ids[1] = ki;
          found = assemble(r, bank, ids);
        });
        if (found) return found;
      }
    }
    return std::nullopt;
  }

  const Grammar& g_;
  const ExampleSet& ex_;
  std::vector<Rule> rules_;
};

}  // namespace merlin
