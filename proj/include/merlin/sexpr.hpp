#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace merlin {

struct InputError : std::runtime_error {
  int line = 0;
  int col = 0;
  InputError(const std::string& msg, int l = 0, int c = 0)
      : std::runtime_error(l > 0 ? std::to_string(l) + ":" + std::to_string(c) + ": " + msg : msg), line(l), col(c) {}
};

struct SExpr {
  enum class Kind { List, Symbol, String, Numeral, Hex, Binary };
  Kind kind = Kind::List;
  std::string text;  // decoded contents for strings, raw digits for numerals
  std::vector<SExpr> items;
  int line = 0;
  int col = 0;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_atom() const { return kind != Kind::List; }

  [[noreturn]] void fail(const std::string& msg) const { throw InputError(msg, line, col); }

  std::string to_string() const {
    switch (kind) {
      case Kind::List: {
        std::string out = "(";
        for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " " : "") + items[i].to_string();
        return out + ")";
      }
      case Kind::String: return "\"" + text + "\"";
      case Kind::Hex: return "#x" + text;
      case Kind::Binary: return "#b" + text;
      default: return text;
    }
  }
};

class SExprReader {
 public:
  explicit SExprReader(std::string_view src) : src_(src) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (true) {
      skip();
      if (pos_ >= src_.size()) break;
      out.push_back(read());
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw InputError(msg, line_, col_); }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < src_.size() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = peek();
    if (static_cast<unsigned char>(c) >= 0x80) fail("non-ASCII character in input");
    if (c == '(') {
      take();
      e.kind = SExpr::Kind::List;
      while (true) {
        skip();
        if (pos_ >= src_.size()) throw InputError("unterminated list", e.line, e.col);
        if (peek() == ')') {
          take();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      take();
      e.kind = SExpr::Kind::String;
      e.text = read_string(e);
      return e;
    }
    std::string tok;
    while (pos_ < src_.size()) {
      char d = peek();
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      if (static_cast<unsigned char>(d) >= 0x80) fail("non-ASCII character in input");
      tok += take();
    }
    if (tok.size() > 2 && tok[0] == '#' && (tok[1] == 'x' || tok[1] == 'b')) {
      e.kind = tok[1] == 'x' ? SExpr::Kind::Hex : SExpr::Kind::Binary;
      e.text = tok.substr(2);
      for (char d : e.text) {
        bool ok = tok[1] == 'x' ? std::isxdigit(static_cast<unsigned char>(d)) != 0 : (d == '0' || d == '1');
        if (!ok) throw InputError("malformed bit-vector literal " + tok, e.line, e.col);
      }
      return e;
    }
    bool numeral = !tok.empty();
    for (char d : tok) numeral = numeral && std::isdigit(static_cast<unsigned char>(d));
    e.kind = numeral ? SExpr::Kind::Numeral : SExpr::Kind::Symbol;
    e.text = tok;
    return e;
  }

  // SMT-LIB string literal: "" is a quote, \u{h..} and \uhhhh are escapes.
  std::string read_string(const SExpr& at) {
    std::string out;
    while (true) {
      if (pos_ >= src_.size()) throw InputError("unterminated string literal", at.line, at.col);
      char c = take();
      if (static_cast<unsigned char>(c) >= 0x80) fail("non-ASCII character in string literal");
      if (c == '"') {
        if (peek() == '"') {
          take();
          out += '"';
          continue;
        }
        return out;
      }
      if (c == '\\' && peek() == 'u') {
        std::size_t save = pos_;
        int sl = line_, sc = col_;
        take();
        std::string hex;
        if (peek() == '{') {
          take();
          while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(peek())) && hex.size() < 5) hex += take();
          if (peek() == '}' && !hex.empty()) take();
          else hex.clear();
        } else {
          while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(peek())) && hex.size() < 4) hex += take();
          if (hex.size() != 4) hex.clear();
        }
        if (hex.empty()) {
          // not an escape: keep the backslash literally
          pos_ = save;
          line_ = sl;
          col_ = sc;
          out += c;
          continue;
        }
        unsigned long cp = std::stoul(hex, nullptr, 16);
        if (cp >= 0x80) fail("non-ASCII escape \\u" + hex + " in string literal");
        out += static_cast<char>(cp);
        continue;
      }
      out += c;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::vector<SExpr> parse_sexprs(std::string_view src) { return SExprReader(src).read_all(); }

}  // namespace merlin
