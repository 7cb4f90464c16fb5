#include "tscls/syntax.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <system_error>
#include <vector>

#include "tscls/error.hpp"

namespace tscls {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Real, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

std::vector<Token> lex(std::string_view src, bool keep_newlines) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  auto advance = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      if (keep_newlines) out.push_back({Tok::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i, scol = col;
    if (is_alpha(c)) {
      while (i < src.size() && (is_alpha(src[i]) || is_digit(src[i]) || src[i] == '_')) advance(1);
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), line, scol});
      continue;
    }
    if (is_digit(c)) {
      bool real = false;
      while (i < src.size() && is_digit(src[i])) advance(1);
      if (i + 1 < src.size() && src[i] == '.' && is_digit(src[i + 1])) {
        real = true;
        advance(1);
        while (i < src.size() && is_digit(src[i])) advance(1);
      }
      if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
        if (j < src.size() && is_digit(src[j])) {
          real = true;
          advance(j - i);
          while (i < src.size() && is_digit(src[i])) advance(1);
        }
      }
      out.push_back({real ? Tok::Real : Tok::Int, std::string(src.substr(start, i - start)), line, scol});
      continue;
    }
    if (src.substr(i, 2) == "==" || src.substr(i, 2) == "->") {
      out.push_back({Tok::Punct, std::string(src.substr(i, 2)), line, scol});
      advance(2);
      continue;
    }
    static const std::string_view punct = "|.<>[]*$~?{}:,=()+-/";
    if (punct.find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, scol});
      advance(1);
      continue;
    }
    throw ParseError(line, scol, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool is_reserved(const std::string& s) {
  return s == "eps" || s == "if" || s == "then" || s == "else";
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const {
    std::size_t j = std::min(pos_ + k, toks_.size() - 1);
    return toks_[j];
  }
  bool at_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool at_ident(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool at_end_of_line() const { return peek().kind == Tok::Newline || peek().kind == Tok::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string got = t.kind == Tok::End ? "end of input" : t.kind == Tok::Newline ? "end of line" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, msg + " (found " + got + ")");
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    next();
  }
  void expect_ident(std::string_view s) {
    if (!at_ident(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident || is_reserved(peek().text)) fail(peek(), std::string("expected ") + what);
    return next().text;
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
  }
  void expect_end_of_line() {
    if (!at_end_of_line()) fail(peek(), "unexpected trailing input");
    if (peek().kind == Tok::Newline) next();
  }

  // -- terms and patterns --------------------------------------------------

  Pattern parse_par(bool allow_vars) {
    Pattern p;
    parse_item(p, allow_vars);
    while (at_punct("|")) {
      next();
      parse_item(p, allow_vars);
    }
    return p;
  }

  void parse_item(Pattern& p, bool allow_vars) {
    std::size_t mult = 1;
    if (peek().kind == Tok::Int) {
      const Token& t = next();
      mult = parse_count(t);
      expect_punct("*");
    }
    if (at_ident("eps")) {
      next();
      return;
    }
    PatternItem item;
    if (at_punct("<")) {
      next();
      SeqPattern membrane = parse_seq(allow_vars);
      expect_punct(">");
      Pattern content;
      if (at_punct("[")) {
        next();
        content = parse_par(allow_vars);
        expect_punct("]");
      }
      item = PatternItem::loop(std::move(membrane), std::move(content));
    } else if (at_punct("$")) {
      const Token& t = next();
      if (!allow_vars) fail(t, "variables are not allowed in a ground term");
      item = PatternItem::term_var(ident("variable name"));
    } else {
      item = PatternItem::sequence(parse_seq(allow_vars));
    }
    for (std::size_t k = 0; k < mult; ++k) p.items.push_back(item);
  }

  SeqPattern parse_seq(bool allow_vars) {
    SeqPattern s;
    s.push_back(parse_atom(allow_vars));
    while (at_punct(".")) {
      next();
      s.push_back(parse_atom(allow_vars));
    }
    return s;
  }

  SeqAtom parse_atom(bool allow_vars) {
    const Token& t = peek();
    if (at_punct("~") || at_punct("?")) {
      if (!allow_vars) fail(t, "variables are not allowed in a ground term");
      bool seq = t.text == "~";
      next();
      std::string n = ident("variable name");
      return seq ? Variable::seq(n) : Variable::elem(n);
    }
    if (at_punct("$")) fail(t, "term variable in a sequence position");
    if (at_punct(">")) fail(t, "empty membrane");
    if (at_ident("eps")) fail(t, "eps cannot appear inside a sequence");
    return Element(ident("element"));
  }

  std::size_t parse_count(const Token& t) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "invalid multiplicity");
    return v;
  }

  // -- rate expressions ----------------------------------------------------

  RateExpr parse_expr() {
    RateExpr lhs = parse_mul();
    while (at_punct("+") || at_punct("-")) {
      const Token& t = next();
      RateExpr rhs = parse_mul();
      lhs = RateExpr::binary(t.text == "+" ? RateExpr::Op::Add : RateExpr::Op::Sub, std::move(lhs), std::move(rhs));
      lhs.column = t.col;
    }
    return lhs;
  }

  RateExpr parse_mul() {
    RateExpr lhs = parse_unary();
    while (at_punct("*") || at_punct("/")) {
      const Token& t = next();
      RateExpr rhs = parse_unary();
      lhs = RateExpr::binary(t.text == "*" ? RateExpr::Op::Mul : RateExpr::Op::Div, std::move(lhs), std::move(rhs));
      lhs.column = t.col;
    }
    return lhs;
  }

  RateExpr parse_unary() {
    if (at_punct("-")) {
      const Token& t = next();
      RateExpr e = RateExpr::neg(parse_unary());
      e.column = t.col;
      return e;
    }
    return parse_primary();
  }

  RateExpr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int || t.kind == Tok::Real) {
      next();
      RateExpr e = RateExpr::number(parse_real(t));
      e.column = t.col;
      return e;
    }
    if (at_punct("(")) {
      next();
      RateExpr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (at_ident("if")) {
      next();
      std::string guard = ident("count variable");
      expect_punct("==");
      if (peek().kind != Tok::Int || peek().text.find_first_not_of('0') != std::string::npos) {
        fail(peek(), "only '== 0' guards are supported");
      }
      next();
      expect_ident("then");
      RateExpr when_zero = parse_expr();
      expect_ident("else");
      RateExpr otherwise = parse_expr();
      RateExpr e = RateExpr::if_zero(std::move(guard), std::move(when_zero), std::move(otherwise));
      e.column = t.col;
      return e;
    }
    if (t.kind == Tok::Ident && !is_reserved(t.text)) {
      next();
      RateExpr e = RateExpr::ref(t.text);
      e.column = t.col;
      return e;
    }
    fail(t, "expected a number, a name, '(' or 'if'");
  }

  double parse_real(const Token& t) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "invalid number");
    return v;
  }

  double parse_signed_real() {
    bool negative = false;
    if (at_punct("-")) {
      next();
      negative = true;
    }
    const Token& t = peek();
    if (t.kind != Tok::Int && t.kind != Tok::Real) fail(t, "expected a number");
    next();
    double v = parse_real(t);
    return negative ? -v : v;
  }

  std::uint64_t parse_uint() {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail(t, "expected a non-negative integer");
    next();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "integer out of range");
    return v;
  }

  // -- model files ---------------------------------------------------------

  ModelFile parse_model_file() {
    ModelFile m;
    bool have_init = false;
    skip_newlines();
    while (peek().kind != Tok::End) {
      const Token& head = peek();
      if (head.kind != Tok::Ident) fail(head, "expected a directive");
      const std::string d = head.text;
      next();
      if (d == "model") {
        m.name = ident("model name");
        expect_end_of_line();
      } else if (d == "const") {
        const Token& nt = peek();
        std::string name = ident("constant name");
        expect_punct("=");
        double v = parse_signed_real();
        if (!m.constants.emplace(name, v).second) fail(nt, "constant '" + name + "' declared twice");
        expect_end_of_line();
      } else if (d == "type") {
        const Token& et = peek();
        Element e(ident("element"));
        expect_punct(":");
        std::string type = ident("type name");
        if (!m.type_decls.emplace(e, type).second) fail(et, "type of '" + e.name() + "' declared twice");
        expect_end_of_line();
      } else if (d == "rule") {
        m.rules.push_back(parse_rule());
      } else if (d == "init") {
        if (have_init) fail(head, "init declared twice");
        expect_punct(":");
        m.init = canonicalize_at(head, to_term(parse_par(false)));
        have_init = true;
        expect_end_of_line();
      } else if (d == "observe") {
        auto scope = ObservableSpec::Scope::Global;
        if (at_ident("per_compartment") && at_punct(":", 1)) {
          next();
          next();
          scope = ObservableSpec::Scope::PerCompartment;
        }
        m.observables.push_back({Element(ident("element")), scope});
        while (at_punct(",")) {
          next();
          m.observables.push_back({Element(ident("element")), scope});
        }
        expect_end_of_line();
      } else if (d == "run") {
        parse_run(m.run);
        expect_end_of_line();
      } else if (d == "typing") {
        expect_punct(":");
        const Token& t = peek();
        std::string mode = ident("typing mode");
        if (mode == "positional") {
          m.typing = TypingMode::Positional;
        } else if (mode == "literal") {
          m.typing = TypingMode::Literal;
        } else {
          fail(t, "typing mode must be 'positional' or 'literal'");
        }
        expect_end_of_line();
      } else {
        fail(head, "unknown directive");
      }
      skip_newlines();
    }
    if (!have_init) fail(peek(), "model has no init term");
    return m;
  }

  RewriteRule parse_rule() {
    RewriteRule r;
    r.id = ident("rule id");
    expect_punct("{");
    expect_end_of_line();
    bool have_lhs = false, have_rhs = false, have_rate = false;
    for (;;) {
      skip_newlines();
      const Token& t = peek();
      if (at_punct("}")) {
        next();
        break;
      }
      if (t.kind == Tok::End) fail(t, "unterminated rule " + r.id);
      std::string key = ident("'lhs', 'rhs', 'count' or 'rate'");
      if (key == "lhs" || key == "rhs") {
        bool& have = key == "lhs" ? have_lhs : have_rhs;
        if (have) fail(t, key + " given twice in rule " + r.id);
        expect_punct(":");
        (key == "lhs" ? r.lhs : r.rhs) = parse_par(true);
        have = true;
      } else if (key == "count") {
        parse_count_decl(r);
      } else if (key == "rate") {
        if (have_rate) fail(t, "rate given twice in rule " + r.id);
        expect_punct(":");
        r.rate = parse_expr();
        have_rate = true;
      } else {
        fail(t, "expected 'lhs', 'rhs', 'count' or 'rate'");
      }
      expect_end_of_line();
    }
    if (!have_lhs) fail(peek(), "rule " + r.id + " has no lhs");
    if (!have_rhs) fail(peek(), "rule " + r.id + " has no rhs");
    if (!have_rate) fail(peek(), "rule " + r.id + " has no rate");
    return r;
  }

  void parse_count_decl(RewriteRule& r) {
    Variable v;
    const Token& t = peek();
    if (at_punct("$")) {
      next();
      v = Variable::term(ident("variable name"));
    } else if (at_punct("~")) {
      next();
      v = Variable::seq(ident("variable name"));
    } else if (at_punct("?")) {
      next();
      v = Variable::elem(ident("variable name"));
    } else {
      fail(t, "expected a variable");
    }
    auto& decls = r.counts.of(v);
    expect_punct("{");
    skip_newlines();
    if (!at_punct("}")) {
      for (;;) {
        skip_newlines();
        TypeName type;
        std::string base = ident("type name");
        if (base == "seq" && at_punct("(")) {
          next();
          type = TypeName::sequence(ident("type name"));
          expect_punct(")");
        } else {
          type = TypeName::basic(base);
        }
        expect_punct("->");
        decls.push_back({type, ident("count variable name")});
        skip_newlines();
        if (!at_punct(",")) break;
        next();
      }
    }
    expect_punct("}");
  }

  void parse_run(RunDefaults& run) {
    expect_punct("{");
    skip_newlines();
    while (!at_punct("}")) {
      const Token& t = peek();
      std::string key = ident("run setting");
      expect_punct(":");
      if (key == "seed") {
        run.seed = parse_uint();
      } else if (key == "tmax") {
        run.tmax = parse_signed_real();
      } else if (key == "max_steps") {
        run.max_steps = parse_uint();
      } else if (key == "samples") {
        run.samples = parse_uint();
      } else {
        fail(t, "unknown run setting '" + key + "'");
      }
      skip_newlines();
      if (at_punct(",")) {
        next();
        skip_newlines();
      } else if (!at_punct("}")) {
        fail(peek(), "expected ',' or '}'");
      }
    }
    next();
  }

  Term canonicalize_at(const Token& where, const Term& t) {
    try {
      return canonicalize(t);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where.line, where.col, e.what());
    }
  }

  static Term to_term(const Pattern& p) {
    std::vector<Entry> entries;
    for (const auto& item : p.items) {
      Sequence s;
      for (const auto& a : item.seq) s.push_back(std::get<Element>(a));
      if (item.kind == PatternItem::Kind::Loop) {
        entries.push_back({Component::loop(std::move(s), to_term(*item.content)), 1});
      } else {
        entries.push_back({Component::seq(std::move(s)), 1});
      }
    }
    return Term(std::move(entries));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

void print_atoms(const SeqPattern& s, std::string& out) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ".";
    if (const auto* e = std::get_if<Element>(&s[i])) {
      out += e->name();
    } else {
      out += std::get<Variable>(s[i]).str();
    }
  }
}

void print_term_into(const Term& t, std::string& out);

void print_component(const Component& c, std::string& out) {
  out += c.is_loop() ? "<" + print_sequence(c.membrane()) + ">" : print_sequence(c.elements());
  if (c.is_loop()) {
    if (c.content().empty()) {
      out += "[eps]";
    } else {
      out += "[ ";
      print_term_into(c.content(), out);
      out += " ]";
    }
  }
}

void print_term_into(const Term& t, std::string& out) {
  bool first = true;
  for (const auto& e : t.entries()) {
    if (e.count == 0) continue;
    if (!first) out += " | ";
    first = false;
    if (e.count > 1) out += std::to_string(e.count) + " * ";
    print_component(e.component, out);
  }
  if (first) out += "eps";
}

void print_pattern_into(const Pattern& p, std::string& out) {
  if (p.items.empty()) {
    out += "eps";
    return;
  }
  for (std::size_t i = 0; i < p.items.size(); ++i) {
    if (i) out += " | ";
    const auto& item = p.items[i];
    switch (item.kind) {
      case PatternItem::Kind::TermVar: out += item.var.str(); break;
      case PatternItem::Kind::Seq: print_atoms(item.seq, out); break;
      case PatternItem::Kind::Loop:
        out += "<";
        print_atoms(item.seq, out);
        out += ">";
        if (item.content->empty()) {
          out += "[eps]";
        } else {
          out += "[ ";
          print_pattern_into(*item.content, out);
          out += " ]";
        }
        break;
    }
  }
}

int precedence(const RateExpr& e) {
  switch (e.op) {
    case RateExpr::Op::IfZero: return 0;
    case RateExpr::Op::Add:
    case RateExpr::Op::Sub: return 1;
    case RateExpr::Op::Mul:
    case RateExpr::Op::Div: return 2;
    case RateExpr::Op::Neg: return 3;
    case RateExpr::Op::Num: return e.value < 0 ? 3 : 4;
    case RateExpr::Op::Name: return 4;
  }
  return 4;
}

void print_rate_into(const RateExpr& e, std::string& out);

void print_operand(const RateExpr& e, bool parens, std::string& out) {
  if (parens) out += "(";
  print_rate_into(e, out);
  if (parens) out += ")";
}

void print_rate_into(const RateExpr& e, std::string& out) {
  using Op = RateExpr::Op;
  switch (e.op) {
    case Op::Num:
      if (e.value < 0) {
        out += "-" + format_real(-e.value);
      } else {
        out += format_real(e.value);
      }
      return;
    case Op::Name: out += e.name; return;
    case Op::Neg:
      out += "-";
      print_operand(e.args[0], precedence(e.args[0]) < 3, out);
      return;
    case Op::IfZero:
      out += "if " + e.name + " == 0 then ";
      print_rate_into(e.args[0], out);
      out += " else ";
      print_rate_into(e.args[1], out);
      return;
    default: break;
  }
  const int p = precedence(e);
  const char* sym = e.op == Op::Add ? " + " : e.op == Op::Sub ? " - " : e.op == Op::Mul ? " * " : " / ";
  print_operand(e.args[0], precedence(e.args[0]) < p, out);
  out += sym;
  print_operand(e.args[1], precedence(e.args[1]) <= p, out);
}

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(lex(text, false));
  const Token start = p.peek();
  Pattern pat = p.parse_par(false);
  p.expect_end();
  return p.canonicalize_at(start, Parser::to_term(pat));
}

Pattern parse_pattern(std::string_view text) {
  Parser p(lex(text, false));
  Pattern pat = p.parse_par(true);
  p.expect_end();
  return pat;
}

RateExpr parse_rate(std::string_view text) {
  Parser p(lex(text, false));
  RateExpr e = p.parse_expr();
  p.expect_end();
  return e;
}

ModelFile parse_model(std::string_view text) {
  Parser p(lex(text, true));
  ModelFile m = p.parse_model_file();
  validate_model(m);
  return m;
}

std::string print_sequence(const Sequence& s) {
  if (s.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ".";
    out += s[i].name();
  }
  return out;
}

std::string print_term(const Term& t) {
  std::string out;
  print_term_into(t, out);
  return out;
}

std::string print_pattern(const Pattern& p) {
  std::string out;
  print_pattern_into(p, out);
  return out;
}

std::string print_rate(const RateExpr& e) {
  std::string out;
  print_rate_into(e, out);
  return out;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print_model(const ModelFile& m) {
  std::string out;
  if (!m.name.empty()) out += "model " + m.name + "\n\n";
  if (m.typing == TypingMode::Literal) out += "typing: literal\n\n";
  if (!m.constants.empty()) {
    for (const auto& [n, v] : m.constants) out += "const " + n + " = " + format_real(v) + "\n";
    out += "\n";
  }
  if (!m.type_decls.empty()) {
    for (const auto& [e, t] : m.type_decls) out += "type " + e.name() + " : " + t + "\n";
    out += "\n";
  }
  for (const auto& r : m.rules) {
    out += "rule " + r.id + " {\n";
    out += "  lhs: " + print_pattern(r.lhs) + "\n";
    out += "  rhs: " + print_pattern(r.rhs) + "\n";
    for (const auto& [v, decls] : r.counts.per_var) {
      out += "  count " + v.str() + " {";
      for (std::size_t i = 0; i < decls.size(); ++i) {
        out += i ? ", " : " ";
        out += decls[i].type.str() + " -> " + decls[i].name;
      }
      out += decls.empty() ? "}\n" : " }\n";
    }
    out += "  rate: " + print_rate(r.rate) + "\n";
    out += "}\n\n";
  }
  out += "init: " + print_term(m.init) + "\n";
  auto print_obs = [&](ObservableSpec::Scope scope, const char* prefix) {
    std::string line;
    for (const auto& o : m.observables) {
      if (o.scope != scope) continue;
      line += line.empty() ? prefix : ", ";
      line += o.element.name();
    }
    if (!line.empty()) out += line + "\n";
  };
  print_obs(ObservableSpec::Scope::Global, "observe ");
  print_obs(ObservableSpec::Scope::PerCompartment, "observe per_compartment: ");
  if (!m.run.empty()) {
    std::string fields;
    auto add = [&](const char* key, const std::string& value) {
      fields += fields.empty() ? " " : ", ";
      fields += std::string(key) + ": " + value;
    };
    if (m.run.seed) add("seed", std::to_string(*m.run.seed));
    if (m.run.tmax) add("tmax", format_real(*m.run.tmax));
    if (m.run.max_steps) add("max_steps", std::to_string(*m.run.max_steps));
    if (m.run.samples) add("samples", std::to_string(*m.run.samples));
    out += "run {" + fields + " }\n";
  }
  return out;
}

}  // namespace tscls
