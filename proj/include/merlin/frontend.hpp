#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "merlin/sexpr.hpp"
#include "merlin/task.hpp"

namespace merlin {

namespace detail {

inline Sort parse_sort(const SExpr& e) {
  if (e.is_symbol("String")) return Sort::string();
  if (e.is_symbol("Int")) return Sort::integer();
  if (e.is_symbol("Bool")) return Sort::boolean();
  if (e.is_list() && e.items.size() == 3 && e.items[0].is_symbol("_") && e.items[1].is_symbol("BitVec") &&
      e.items[2].kind == SExpr::Kind::Numeral) {
    unsigned long w = std::stoul(e.items[2].text);
    if (w == 0 || w > 64) e.fail("bit-vector width must be in 1..64");
    return Sort::bitvec(static_cast<std::uint32_t>(w));
  }
  e.fail("unsupported sort " + e.to_string());
}

inline std::optional<Value> parse_literal(const SExpr& e) {
  switch (e.kind) {
    case SExpr::Kind::String: return Value(e.text);
    case SExpr::Kind::Numeral: return Value(static_cast<std::int64_t>(std::stoll(e.text)));
    case SExpr::Kind::Hex: {
      if (e.text.size() > 16) e.fail("bit-vector literal wider than 64 bits");
      return Value::bv(std::stoull(e.text, nullptr, 16), static_cast<std::uint32_t>(4 * e.text.size()));
    }
    case SExpr::Kind::Binary: {
      if (e.text.size() > 64) e.fail("bit-vector literal wider than 64 bits");
      return Value::bv(std::stoull(e.text, nullptr, 2), static_cast<std::uint32_t>(e.text.size()));
    }
    case SExpr::Kind::Symbol:
      if (e.text == "true") return Value(true);
      if (e.text == "false") return Value(false);
      return std::nullopt;
    case SExpr::Kind::List:
      // (- n) and (_ bvN w)
      if (e.items.size() == 2 && e.items[0].is_symbol("-") && e.items[1].kind == SExpr::Kind::Numeral)
        return Value(-static_cast<std::int64_t>(std::stoll(e.items[1].text)));
      if (e.items.size() == 3 && e.items[0].is_symbol("_") && e.items[1].kind == SExpr::Kind::Symbol &&
          e.items[1].text.rfind("bv", 0) == 0 && e.items[2].kind == SExpr::Kind::Numeral) {
        auto w = static_cast<std::uint32_t>(std::stoul(e.items[2].text));
        if (w == 0 || w > 64) e.fail("bit-vector width must be in 1..64");
        return Value::bv(std::stoull(e.items[1].text.substr(2)), w);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

struct GrammarScope {
  const std::vector<Parameter>* params;
  const Grammar* grammar;
  std::uint32_t width;
};

inline Program parse_rule(const SExpr& e, const GrammarScope& sc) {
  if (auto v = parse_literal(e)) return Program::make(Terminal::constant_of(*v));
  if (e.kind == SExpr::Kind::Symbol) {
    for (std::size_t i = 0; i < sc.params->size(); ++i)
      if ((*sc.params)[i].name == e.text)
        return Program::make(Terminal::variable(static_cast<std::uint32_t>(i), e.text, (*sc.params)[i].sort));
    if (auto nt = sc.grammar->find(e.text)) return sc.grammar->hole(*nt);
    e.fail("unknown symbol " + e.text);
  }
  if (e.items.empty()) e.fail("empty application");
  const SExpr& head = e.items[0];
  if (head.is_symbol("Constant") || head.is_symbol("Variable") || head.is_symbol("InputVariable"))
    head.fail("unsupported grammar form " + head.text);
  if (head.kind != SExpr::Kind::Symbol) head.fail("operator expected");
  auto op = opcode_by_name(head.text);
  if (!op) head.fail("unsupported operator " + head.text);
  std::vector<Program> kids;
  for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(parse_rule(e.items[i], sc));
  std::uint32_t w = sc.width;
  if (!kids.empty() && kids[0].sort().kind == SortKind::BitVec) w = kids[0].sort().width;
  return Program::make(Terminal::op_of(*op, w), std::move(kids));
}

inline Value convert_literal(const SExpr& e, const Sort& want, const char* what) {
  auto v = parse_literal(e);
  if (!v) e.fail(std::string("non-constant argument in constraint: ") + e.to_string() + " (" + what + ")");
  if (!(v->sort() == want))
    e.fail(std::string("literal ") + e.to_string() + " has sort " + v->sort().to_string() + ", expected " +
           want.to_string());
  return *v;
}

inline void finish_task(SynthesisTask& t) {
  if (t.result.kind == SortKind::String) {
    t.logic = Logic::Strings;
  } else if (t.result.kind == SortKind::BitVec) {
    t.logic = Logic::BitVectors;
    t.width = t.result.width;
  } else {
    throw InputError("function result must be String or a bit-vector");
  }
  auto errs = validate_grammar(t.grammar);
  if (!errs.empty()) {
    std::string msg = "invalid grammar: " + errs[0];
    for (std::size_t i = 1; i < errs.size(); ++i) msg += "; " + errs[i];
    throw InputError(msg);
  }
  if (t.examples.size() == 0) throw InputError("task has no examples");
  try {
    t.examples.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace detail

// Parses the SyGuS programming-by-example subset.
inline SynthesisTask parse_sygus(std::string_view src) {
  SynthesisTask t;
  bool have_fun = false;
  std::vector<std::pair<const SExpr*, const SExpr*>> constraints;
  auto top = parse_sexprs(src);
  for (const auto& cmd : top) {
    if (!cmd.is_list() || cmd.items.empty() || cmd.items[0].kind != SExpr::Kind::Symbol) cmd.fail("command expected");
    const std::string& name = cmd.items[0].text;
    if (name == "set-logic" || name == "set-option" || name == "check-synth" || name == "set-info") continue;
    if (name == "declare-var") continue;
    if (name == "synth-fun") {
      if (have_fun) cmd.fail("only one synth-fun is supported");
      have_fun = true;
      if (cmd.items.size() < 5) cmd.fail("synth-fun needs a name, parameters, a sort and a grammar");
      t.name = cmd.items[1].text;
      for (const auto& p : cmd.items[2].items) {
        if (!p.is_list() || p.items.size() != 2 || p.items[0].kind != SExpr::Kind::Symbol) p.fail("parameter expected");
        t.params.push_back({p.items[0].text, detail::parse_sort(p.items[1])});
      }
      t.result = detail::parse_sort(cmd.items[3]);
      const SExpr* rules = &cmd.items[4];
      // optional predeclaration list ((N Sort) ...) before the rules
      if (cmd.items.size() >= 6) {
        for (const auto& d : cmd.items[4].items) {
          if (!d.is_list() || d.items.size() != 2) d.fail("nonterminal declaration expected");
          t.grammar.add_nonterminal(d.items[0].text, detail::parse_sort(d.items[1]));
        }
        rules = &cmd.items[5];
      } else {
        for (const auto& d : rules->items) {
          if (!d.is_list() || d.items.size() != 3) d.fail("grammar rule group expected");
          t.grammar.add_nonterminal(d.items[0].text, detail::parse_sort(d.items[1]));
        }
      }
      if (t.grammar.nonterminals().empty()) cmd.fail("empty grammar");
      std::uint32_t w = t.result.kind == SortKind::BitVec ? t.result.width : 0;
      detail::GrammarScope sc{&t.params, &t.grammar, w};
      for (const auto& d : rules->items) {
        if (!d.is_list() || d.items.size() != 3 || !d.items[2].is_list()) d.fail("grammar rule group expected");
        auto nt = t.grammar.find(d.items[0].text);
        if (!nt) d.fail("undeclared nonterminal " + d.items[0].text);
        for (const auto& r : d.items[2].items) t.grammar.add_production(*nt, Sketch{detail::parse_rule(r, sc)});
      }
      t.grammar.set_start(0);
      continue;
    }
    if (name == "constraint") {
      if (cmd.items.size() != 2) cmd.fail("constraint takes one term");
      const SExpr& c = cmd.items[1];
      if (!c.is_list() || c.items.size() != 3 || !c.items[0].is_symbol("="))
        c.fail("constraint must have the form (= (f args...) output)");
      const SExpr* call = &c.items[1];
      const SExpr* out = &c.items[2];
      if (!(call->is_list() && !call->items.empty() && call->items[0].is_symbol(t.name))) std::swap(call, out);
      if (!(call->is_list() && !call->items.empty() && call->items[0].kind == SExpr::Kind::Symbol))
        c.fail("constraint must apply the synthesized function");
      constraints.emplace_back(call, out);
      continue;
    }
    cmd.items[0].fail("unsupported command " + name);
  }
  if (!have_fun) throw InputError("no synth-fun in task");
  for (auto [call, out] : constraints) {
    if (!call->items[0].is_symbol(t.name)) call->items[0].fail("constraint must apply " + t.name);
    if (call->items.size() != t.params.size() + 1) call->fail("wrong number of arguments to " + t.name);
    Assignment in;
    for (std::size_t i = 0; i < t.params.size(); ++i)
      in.push_back(detail::convert_literal(call->items[i + 1], t.params[i].sort, "argument"));
    t.examples.add(std::move(in), detail::convert_literal(*out, t.result, "output"));
  }
  detail::finish_task(t);
  return t;
}

namespace detail {

inline Value json_value(const nlohmann::json& j, const Sort& s) {
  switch (s.kind) {
    case SortKind::String:
      if (!j.is_string()) throw InputError("expected a JSON string for a String value");
      for (unsigned char c : j.get<std::string>())
        if (c >= 0x80) throw InputError("non-ASCII character in string value");
      return Value(j.get<std::string>());
    case SortKind::Int:
      if (!j.is_number_integer()) throw InputError("expected an integer value");
      return Value(j.get<std::int64_t>());
    case SortKind::Bool:
      if (!j.is_boolean()) throw InputError("expected a boolean value");
      return Value(j.get<bool>());
    case SortKind::BitVec: {
      if (j.is_number_unsigned() || j.is_number_integer()) return Value::bv(j.get<std::uint64_t>(), s.width);
      if (!j.is_string()) throw InputError("expected a bit-vector literal");
      auto es = parse_sexprs(j.get<std::string>());
      if (es.size() != 1) throw InputError("malformed bit-vector literal " + j.get<std::string>());
      return convert_literal(es[0], s, "value");
    }
  }
  throw InputError("unsupported sort");
}

inline Sort json_sort(const nlohmann::json& j) {
  if (!j.is_string()) throw InputError("sort must be a string");
  auto es = parse_sexprs(j.get<std::string>());
  if (es.size() != 1) throw InputError("malformed sort " + j.get<std::string>());
  return parse_sort(es[0]);
}

}  // namespace detail

// JSON mirror of the SyGuS subset:
// {"name","params":[{"name","sort"}],"result","grammar":[{"nonterminal","sort","rules":[...]}],
//  "examples":[[[inputs...], output], ...]}; rules are s-expression strings.
inline SynthesisTask parse_json_task(std::string_view src) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(src);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  SynthesisTask t;
  try {
    t.name = j.value("name", std::string("f"));
    for (const auto& p : j.at("params")) t.params.push_back({p.at("name").get<std::string>(), detail::json_sort(p.at("sort"))});
    t.result = detail::json_sort(j.at("result"));
    if (j.contains("logic")) {
      auto lg = j.at("logic").get<std::string>();
      if (lg != "strings" && lg != "bitvectors") throw InputError("logic must be \"strings\" or \"bitvectors\"");
    }
    for (const auto& nt : j.at("grammar"))
      t.grammar.add_nonterminal(nt.at("nonterminal").get<std::string>(), detail::json_sort(nt.at("sort")));
    std::uint32_t w = t.result.kind == SortKind::BitVec ? t.result.width : 0;
    if (j.contains("width") && w != 0 && j.at("width").get<std::uint32_t>() != w)
      throw InputError("width disagrees with the result sort");
    detail::GrammarScope sc{&t.params, &t.grammar, w};
    for (const auto& nt : j.at("grammar")) {
      auto id = *t.grammar.find(nt.at("nonterminal").get<std::string>());
      for (const auto& r : nt.at("rules")) {
        auto es = parse_sexprs(r.get<std::string>());
        if (es.size() != 1) throw InputError("each rule must be a single term: " + r.get<std::string>());
        t.grammar.add_production(id, Sketch{detail::parse_rule(es[0], sc)});
      }
    }
    t.grammar.set_start(0);
    for (const auto& ex : j.at("examples")) {
      if (!ex.is_array() || ex.size() != 2 || !ex[0].is_array()) throw InputError("example must be [[inputs...], output]");
      if (ex[0].size() != t.params.size()) throw InputError("example has the wrong number of inputs");
      Assignment in;
      for (std::size_t i = 0; i < t.params.size(); ++i) in.push_back(detail::json_value(ex[0][i], t.params[i].sort));
      t.examples.add(std::move(in), detail::json_value(ex[1], t.result));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad task JSON: ") + e.what());
  }
  detail::finish_task(t);
  return t;
}

inline SynthesisTask load_task(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string src = ss.str();
  bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return json ? parse_json_task(src) : parse_sygus(src);
}

inline std::string emit_solution(const SynthesisTask& t, const Program& p) {
  std::string out = "(define-fun " + t.name + " (";
  for (std::size_t i = 0; i < t.params.size(); ++i)
    out += (i ? " (" : "(") + t.params[i].name + " " + t.params[i].sort.to_string() + ")";
  return out + ") " + t.result.to_string() + " " + p.to_string() + ")";
}

// Reads back a (define-fun ...) produced by emit_solution.
inline Program parse_solution(const SynthesisTask& t, std::string_view text) {
  auto es = parse_sexprs(text);
  if (es.size() != 1 || !es[0].is_list() || es[0].items.size() != 5 || !es[0].items[0].is_symbol("define-fun"))
    throw InputError("expected a single (define-fun name (params) sort body)");
  Grammar empty;
  std::uint32_t w = t.result.kind == SortKind::BitVec ? t.result.width : 0;
  detail::GrammarScope sc{&t.params, &empty, w};
  return detail::parse_rule(es[0].items[4], sc);
}

// Serializes a task back into the SyGuS subset.
inline std::string to_sygus(const SynthesisTask& t) {
  std::string out = t.logic == Logic::Strings ? "(set-logic SLIA)\n" : "(set-logic BV)\n";
  out += "(synth-fun " + t.name + " (";
  for (std::size_t i = 0; i < t.params.size(); ++i)
    out += (i ? " (" : "(") + t.params[i].name + " " + t.params[i].sort.to_string() + ")";
  out += ") " + t.result.to_string() + "\n  (";
  const auto& nts = t.grammar.nonterminals();
  for (std::size_t i = 0; i < nts.size(); ++i) out += (i ? " (" : "(") + nts[i].name + " " + nts[i].sort.to_string() + ")";
  out += ")\n  (";
  for (std::size_t i = 0; i < nts.size(); ++i) {
    out += (i ? "\n   (" : "(") + nts[i].name + " " + nts[i].sort.to_string() + " (";
    bool first = true;
    for (const auto& p : t.grammar.productions()) {
      if (p.lhs != i) continue;
      out += (first ? "" : " ") + p.rhs.tree.to_string();
      first = false;
    }
    out += "))";
  }
  out += "))\n";
  for (std::size_t e = 0; e < t.examples.size(); ++e) {
    out += "(constraint (= (" + t.name;
    for (const auto& v : t.examples.inputs[e]) out += " " + v.to_smt();
    out += ") " + t.examples.outputs[e].to_smt() + "))\n";
  }
  return out + "(check-synth)\n";
}

}  // namespace merlin
