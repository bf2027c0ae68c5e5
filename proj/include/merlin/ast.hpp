#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "merlin/value.hpp"

namespace merlin {

enum class Opcode : std::uint8_t {
  StrConcat, StrReplace, StrSubstr, StrAt, StrLen, IntToStr, IntAdd, IntSub,
  BvNot, BvNeg, BvAnd, BvOr, BvXor, BvAdd, BvSub, BvMul,
  BvUdiv, BvUrem, BvSdiv, BvSrem, BvShl, BvLshr, BvAshr,
};

struct OpInfo {
  Opcode op;
  std::string_view name;
  std::vector<SortKind> args;
  SortKind result;
};

inline const std::vector<OpInfo>& op_table() {
  using S = SortKind;
  static const std::vector<OpInfo> table = {
      {Opcode::StrConcat, "str.++", {S::String, S::String}, S::String},
      {Opcode::StrReplace, "str.replace", {S::String, S::String, S::String}, S::String},
      {Opcode::StrSubstr, "str.substr", {S::String, S::Int, S::Int}, S::String},
      {Opcode::StrAt, "str.at", {S::String, S::Int}, S::String},
      {Opcode::StrLen, "str.len", {S::String}, S::Int},
      {Opcode::IntToStr, "int.to.str", {S::Int}, S::String},
      {Opcode::IntAdd, "+", {S::Int, S::Int}, S::Int},
      {Opcode::IntSub, "-", {S::Int, S::Int}, S::Int},
      {Opcode::BvNot, "bvnot", {S::BitVec}, S::BitVec},
      {Opcode::BvNeg, "bvneg", {S::BitVec}, S::BitVec},
      {Opcode::BvAnd, "bvand", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvOr, "bvor", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvXor, "bvxor", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvAdd, "bvadd", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvSub, "bvsub", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvMul, "bvmul", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvUdiv, "bvudiv", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvUrem, "bvurem", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvSdiv, "bvsdiv", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvSrem, "bvsrem", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvShl, "bvshl", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvLshr, "bvlshr", {S::BitVec, S::BitVec}, S::BitVec},
      {Opcode::BvAshr, "bvashr", {S::BitVec, S::BitVec}, S::BitVec},
  };
  return table;
}

inline const OpInfo& op_info(Opcode op) { return op_table()[static_cast<std::size_t>(op)]; }

inline std::optional<Opcode> opcode_by_name(std::string_view name) {
  if (name == "str.from_int") return Opcode::IntToStr;
  for (const auto& info : op_table())
    if (info.name == name) return info.op;
  return std::nullopt;
}

using NonterminalId = std::uint32_t;

// A grammar terminal: variable, constant, operator symbol, or (in sketches) a hole.
struct Terminal {
  enum class Kind : std::uint8_t { Variable, Constant, Operator, Hole };

  Kind kind = Kind::Constant;
  Opcode op = Opcode::StrConcat;
  std::uint32_t index = 0;  // parameter position, or nonterminal id for holes
  Sort sort;                // result sort
  Value constant;
  std::string name;         // variable or nonterminal name, for printing

  static Terminal variable(std::uint32_t idx, std::string name, Sort s) {
    Terminal t;
    t.kind = Kind::Variable;
    t.index = idx;
    t.sort = s;
    t.name = std::move(name);
    return t;
  }
  static Terminal constant_of(Value v) {
    Terminal t;
    t.kind = Kind::Constant;
    t.sort = v.sort();
    t.constant = std::move(v);
    return t;
  }
  // width is needed for bit-vector operators only
  static Terminal op_of(Opcode op, std::uint32_t width = 0) {
    Terminal t;
    t.kind = Kind::Operator;
    t.op = op;
    const auto& info = op_info(op);
    t.sort = Sort{info.result, info.result == SortKind::BitVec ? width : 0};
    return t;
  }
  static Terminal hole(NonterminalId nt, std::string name, Sort s) {
    Terminal t;
    t.kind = Kind::Hole;
    t.index = nt;
    t.sort = s;
    t.name = std::move(name);
    return t;
  }

  std::size_t arity() const { return kind == Kind::Operator ? op_info(op).args.size() : 0; }

  bool operator==(const Terminal& o) const {
    if (kind != o.kind || !(sort == o.sort)) return false;
    switch (kind) {
      case Kind::Variable: return index == o.index;
      case Kind::Constant: return constant == o.constant;
      case Kind::Operator: return op == o.op;
      case Kind::Hole: return index == o.index;
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(kind) * 1315423911u;
    switch (kind) {
      case Kind::Variable:
      case Kind::Hole: return hash_combine(h, index);
      case Kind::Constant: return hash_combine(h, constant.hash());
      case Kind::Operator: return hash_combine(h, static_cast<std::size_t>(op) + 7);
    }
    return h;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Variable:
      case Kind::Hole: return name;
      case Kind::Constant: return constant.to_smt();
      case Kind::Operator: return std::string(op_info(op).name);
    }
    return "?";
  }
};

// Immutable program tree shared between owners. Equality is structural;
// the hash and size are computed once at construction.
class Program {
 public:
  Program() = default;

  // Arity is not checked here so that malformed sketches can be built and
  // then reported by validate_grammar.
  static Program make(Terminal head, std::vector<Program> children = {}) {
    auto n = std::make_shared<Node>();
    std::size_t h = head.hash();
    std::uint32_t sz = 1;
    bool holes = head.kind == Terminal::Kind::Hole;
    for (const auto& c : children) {
      h = hash_combine(h, c.hash());
      sz += c.size();
      holes = holes || c.has_holes();
    }
    n->head = std::move(head);
    n->children = std::move(children);
    n->hash = h;
    n->size = sz;
    n->has_holes = holes;
    Program p;
    p.node_ = std::move(n);
    return p;
  }

  bool valid() const { return node_ != nullptr; }
  const Terminal& head() const { return node_->head; }
  std::span<const Program> children() const { return node_->children; }
  std::uint32_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }
  bool has_holes() const { return node_->has_holes; }
  Sort sort() const { return node_->head.sort; }
  const void* identity() const { return node_.get(); }

  bool operator==(const Program& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    if (hash() != o.hash() || size() != o.size()) return false;
    if (!(head() == o.head())) return false;
    auto a = children(), b = o.children();
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string to_string() const {
    if (!node_) return "<null>";
    if (node_->children.empty() && head().kind != Terminal::Kind::Operator) return head().to_string();
    std::string out = "(" + head().to_string();
    for (const auto& c : node_->children) out += " " + c.to_string();
    return out + ")";
  }

 private:
  struct Node {
    Terminal head;
    std::vector<Program> children;
    std::size_t hash = 0;
    std::uint32_t size = 1;
    bool has_holes = false;
  };
  std::shared_ptr<const Node> node_;
};

struct ProgramHash {
  std::size_t operator()(const Program& p) const { return p.hash(); }
};

inline std::uint32_t size(const Program& p) { return p.size(); }

// Distinct subprograms, children before parents, p itself last.
inline std::vector<Program> subprograms(const Program& p) {
  std::vector<Program> out;
  std::unordered_set<Program, ProgramHash> seen;
  auto visit = [&](auto&& self, const Program& q) -> void {
    for (const auto& c : q.children()) self(self, c);
    if (seen.insert(q).second) out.push_back(q);
  };
  visit(visit, p);
  return out;
}

// A program whose leaves may be holes standing for nonterminals.
struct Sketch {
  Program tree;

  std::size_t holes() const {
    std::size_t n = 0;
    auto visit = [&](auto&& self, const Program& q) -> void {
      if (q.head().kind == Terminal::Kind::Hole) ++n;
      for (const auto& c : q.children()) self(self, c);
    };
    visit(visit, tree);
    return n;
  }
  // hole nonterminals in left-to-right order
  std::vector<NonterminalId> hole_nonterminals() const {
    std::vector<NonterminalId> out;
    auto visit = [&](auto&& self, const Program& q) -> void {
      if (q.head().kind == Terminal::Kind::Hole) out.push_back(q.head().index);
      for (const auto& c : q.children()) self(self, c);
    };
    visit(visit, tree);
    return out;
  }
  // number of non-hole nodes
  std::uint32_t base_size() const { return tree.size() - static_cast<std::uint32_t>(holes()); }
  bool is_unit() const { return tree.head().kind == Terminal::Kind::Hole; }
};

struct SubstitutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Fill the holes of s left to right.
inline Program substitute(const Sketch& s, std::span<const Program> fills) {
  std::size_t next = 0;
  auto visit = [&](auto&& self, const Program& q) -> Program {
    if (q.head().kind == Terminal::Kind::Hole) {
      if (next >= fills.size()) throw SubstitutionError("too few programs for sketch holes");
      const Program& f = fills[next++];
      if (!(f.sort() == q.head().sort))
        throw SubstitutionError("sort mismatch at hole " + q.head().name + ": expected " + q.head().sort.to_string() +
                                ", got " + f.sort().to_string());
      return f;
    }
    if (!q.has_holes()) return q;
    std::vector<Program> kids;
    kids.reserve(q.children().size());
    for (const auto& c : q.children()) kids.push_back(self(self, c));
    return Program::make(q.head(), std::move(kids));
  };
  Program out = visit(visit, s.tree);
  if (next != fills.size()) throw SubstitutionError("too many programs for sketch holes");
  return out;
}

struct Nonterminal {
  std::string name;
  Sort sort;
};

struct Production {
  NonterminalId lhs = 0;
  Sketch rhs;
};

using NtMask = std::uint64_t;

class Grammar {
 public:
  static constexpr std::size_t kMaxNonterminals = 64;

  NonterminalId add_nonterminal(std::string name, Sort s) {
    nts_.push_back({std::move(name), s});
    return static_cast<NonterminalId>(nts_.size() - 1);
  }
  void add_production(NonterminalId lhs, Sketch rhs) { prods_.push_back({lhs, std::move(rhs)}); }
  void set_start(NonterminalId s) { start_ = s; }

  NonterminalId start() const { return start_; }
  const std::vector<Nonterminal>& nonterminals() const { return nts_; }
  const std::vector<Production>& productions() const { return prods_; }
  const Nonterminal& nonterminal(NonterminalId id) const { return nts_.at(id); }

  std::optional<NonterminalId> find(std::string_view name) const {
    for (std::size_t i = 0; i < nts_.size(); ++i)
      if (nts_[i].name == name) return static_cast<NonterminalId>(i);
    return std::nullopt;
  }

  Program hole(NonterminalId nt) const { return Program::make(Terminal::hole(nt, nts_.at(nt).name, nts_.at(nt).sort)); }

  // Nonterminals B with B =>* A through unit productions (A included).
  NtMask unit_ancestors(NonterminalId a) const {
    NtMask m = NtMask{1} << a;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : prods_) {
        if (!p.rhs.is_unit()) continue;
        NonterminalId child = p.rhs.tree.head().index;
        if ((m >> child & 1) && !(m >> p.lhs & 1)) {
          m |= NtMask{1} << p.lhs;
          changed = true;
        }
      }
    }
    return m;
  }

  // Nonterminals B with A =>* B through unit productions (A included).
  NtMask unit_descendants(NonterminalId a) const {
    NtMask m = NtMask{1} << a;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : prods_) {
        if (!p.rhs.is_unit()) continue;
        NonterminalId child = p.rhs.tree.head().index;
        if ((m >> p.lhs & 1) && !(m >> child & 1)) {
          m |= NtMask{1} << child;
          changed = true;
        }
      }
    }
    return m;
  }

  // Set of nonterminals from which p is derivable.
  NtMask derivable(const Program& p) const {
    std::unordered_map<const void*, NtMask> memo;
    return derivable_rec(p, memo);
  }

  bool generates(const Program& p) const { return !p.has_holes() && (derivable(p) >> start_ & 1); }

 private:
  NtMask derivable_rec(const Program& p, std::unordered_map<const void*, NtMask>& memo) const {
    if (auto it = memo.find(p.identity()); it != memo.end()) return it->second;
    NtMask m = 0;
    for (const auto& prod : prods_) {
      if (prod.rhs.is_unit()) continue;
      if (matches(prod.rhs.tree, p, memo)) m |= NtMask{1} << prod.lhs;
    }
    // close under unit productions
    NtMask closed = 0;
    for (std::size_t a = 0; a < nts_.size(); ++a)
      if (m >> a & 1) closed |= unit_ancestors(static_cast<NonterminalId>(a));
    memo[p.identity()] = closed;
    return closed;
  }

  bool matches(const Program& pattern, const Program& p, std::unordered_map<const void*, NtMask>& memo) const {
    if (pattern.head().kind == Terminal::Kind::Hole) return derivable_rec(p, memo) >> pattern.head().index & 1;
    if (!(pattern.head() == p.head())) return false;
    if (pattern.children().size() != p.children().size()) return false;
    for (std::size_t i = 0; i < p.children().size(); ++i)
      if (!matches(pattern.children()[i], p.children()[i], memo)) return false;
    return true;
  }

  std::vector<Nonterminal> nts_;
  std::vector<Production> prods_;
  NonterminalId start_ = 0;
};

// Empty result means the grammar is well formed.
inline std::vector<std::string> validate_grammar(const Grammar& g) {
  std::vector<std::string> errs;
  const auto& nts = g.nonterminals();
  if (nts.empty()) {
    errs.push_back("grammar has no nonterminals");
    return errs;
  }
  if (nts.size() > Grammar::kMaxNonterminals) errs.push_back("too many nonterminals (limit 64)");
  if (g.start() >= nts.size()) errs.push_back("start symbol is not a declared nonterminal");

  auto check = [&](auto&& self, const Program& q, const std::string& where) -> void {
    const Terminal& t = q.head();
    if (t.kind == Terminal::Kind::Hole) {
      if (t.index >= nts.size()) errs.push_back(where + ": undeclared nonterminal " + t.name);
      else if (!(nts[t.index].sort == t.sort)) errs.push_back(where + ": hole sort disagrees with nonterminal " + t.name);
      return;
    }
    if (t.kind != Terminal::Kind::Operator) {
      if (!q.children().empty()) errs.push_back(where + ": leaf " + t.to_string() + " applied to arguments");
      return;
    }
    const auto& info = op_info(t.op);
    if (q.children().size() != info.args.size()) {
      errs.push_back(where + ": " + std::string(info.name) + " expects " + std::to_string(info.args.size()) +
                     " argument(s), got " + std::to_string(q.children().size()));
      return;
    }
    for (std::size_t i = 0; i < info.args.size(); ++i) {
      const Sort& cs = q.children()[i].sort();
      if (cs.kind != info.args[i]) errs.push_back(where + ": argument " + std::to_string(i + 1) + " of " +
                                                  std::string(info.name) + " has sort " + cs.to_string());
      else if (cs.kind == SortKind::BitVec && t.sort.kind == SortKind::BitVec && cs.width != t.sort.width)
        errs.push_back(where + ": bit-vector width mismatch in " + std::string(info.name));
      self(self, q.children()[i], where);
    }
  };

  std::vector<bool> has_prod(nts.size(), false);
  for (std::size_t i = 0; i < g.productions().size(); ++i) {
    const auto& p = g.productions()[i];
    if (p.lhs >= nts.size()) {
      errs.push_back("production " + std::to_string(i) + ": undeclared left-hand side");
      continue;
    }
    has_prod[p.lhs] = true;
    std::string where = "production " + nts[p.lhs].name + " -> " + p.rhs.tree.to_string();
    check(check, p.rhs.tree, where);
    if (!(p.rhs.tree.sort() == nts[p.lhs].sort))
      errs.push_back(where + ": result sort " + p.rhs.tree.sort().to_string() + " does not match " +
                     nts[p.lhs].sort.to_string());
  }
  for (std::size_t i = 0; i < nts.size(); ++i)
    if (!has_prod[i]) errs.push_back("nonterminal " + nts[i].name + " has no productions");
  return errs;
}

}  // namespace merlin
