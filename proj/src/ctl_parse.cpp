#include "sbcheck/ctl.hpp"

#include "lexer.hpp"

#include <algorithm>

namespace sbcheck {

using K = CtlFormula::Kind;

CtlFormula CtlFormula::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = K::constant;
  n->constant = value;
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::adapting() {
  auto n = std::make_shared<Node>();
  n->kind = K::adapting;
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::steady() {
  auto n = std::make_shared<Node>();
  n->kind = K::steady;
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::in_state(std::string sstate) {
  auto n = std::make_shared<Node>();
  n->kind = K::in_state;
  n->text = std::move(sstate);
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::predicate(std::string formula_text) {
  auto n = std::make_shared<Node>();
  n->kind = K::predicate;
  n->text = std::move(formula_text);
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::unary(Kind kind, CtlFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::make_shared<const CtlFormula>(std::move(f));
  return CtlFormula(std::move(n));
}

CtlFormula CtlFormula::binary(Kind kind, CtlFormula a, CtlFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::make_shared<const CtlFormula>(std::move(a));
  n->right = std::make_shared<const CtlFormula>(std::move(b));
  return CtlFormula(std::move(n));
}

bool CtlFormula::is_atom() const {
  switch (kind()) {
  case K::constant:
  case K::adapting:
  case K::steady:
  case K::in_state:
  case K::predicate:
    return true;
  default:
    return false;
  }
}

bool CtlFormula::is_unary() const {
  switch (kind()) {
  case K::negation:
  case K::ax:
  case K::ex:
  case K::af:
  case K::ef:
  case K::ag:
  case K::eg:
    return true;
  default:
    return false;
  }
}

bool CtlFormula::is_binary() const { return !is_atom() && !is_unary(); }

bool operator==(const CtlFormula& a, const CtlFormula& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (a.kind() != b.kind()) {
    return false;
  }
  if (a.kind() == K::constant) {
    return a.constant_value() == b.constant_value();
  }
  if (a.is_atom()) {
    return a.text() == b.text();
  }
  if (a.is_unary()) {
    return a.left() == b.left();
  }
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

constexpr std::pair<std::string_view, K> kTemporal[] = {
    {"AX", K::ax}, {"EX", K::ex}, {"AF", K::af}, {"EF", K::ef}, {"AG", K::ag}, {"EG", K::eg},
};

class CtlParser {
public:
  explicit CtlParser(std::string_view src) : src_(src), ts_(detail::tokenize(src)) {}

  CtlFormula parse_all() {
    if (ts_.at_end()) {
      ts_.fail("empty CTL formula");
    }
    CtlFormula f = implication();
    if (!ts_.at_end()) {
      ts_.fail("unexpected " + detail::describe(ts_.peek()));
    }
    return f;
  }

private:
  CtlFormula implication() {
    CtlFormula lhs = disjunction();
    if (ts_.accept_punct("->")) {
      return CtlFormula::binary(K::implication, std::move(lhs), implication());
    }
    return lhs;
  }

  CtlFormula disjunction() {
    CtlFormula f = conjunction();
    while (ts_.accept_punct("||")) {
      f = CtlFormula::binary(K::disjunction, std::move(f), conjunction());
    }
    return f;
  }

  CtlFormula conjunction() {
    CtlFormula f = unary();
    while (ts_.accept_punct("&&")) {
      f = CtlFormula::binary(K::conjunction, std::move(f), unary());
    }
    return f;
  }

  CtlFormula unary() {
    if (ts_.accept_punct("!")) {
      return CtlFormula::unary(K::negation, unary());
    }
    for (auto [word, kind] : kTemporal) {
      if (ts_.accept_word(word)) {
        return CtlFormula::unary(kind, unary());
      }
    }
    return primary();
  }

  CtlFormula primary() {
    if (ts_.accept_punct("(")) {
      CtlFormula f = implication();
      ts_.expect_punct(")");
      return f;
    }
    if (ts_.accept_word("true")) return CtlFormula::constant(true);
    if (ts_.accept_word("false")) return CtlFormula::constant(false);
    if (ts_.accept_word("adapting")) return CtlFormula::adapting();
    if (ts_.accept_word("steady")) return CtlFormula::steady();
    if (ts_.accept_word("in")) {
      ts_.expect_punct("(");
      const Token& name = ts_.expect(TokenKind::identifier, "S-state name");
      std::string text = name.text;
      ts_.expect_punct(")");
      return CtlFormula::in_state(std::move(text));
    }
    if (ts_.accept_punct("@")) {
      return predicate();
    }
    if (ts_.is_word("A") && ts_.is_punct("[", 1)) {
      ts_.next();
      return until(K::au);
    }
    if (ts_.is_word("E") && ts_.is_punct("[", 1)) {
      ts_.next();
      return until(K::eu);
    }
    ts_.fail("expected a CTL formula, found " + detail::describe(ts_.peek()));
  }

  CtlFormula until(K kind) {
    ts_.expect_punct("[");
    CtlFormula f = implication();
    ts_.expect_word("U");
    CtlFormula g = implication();
    ts_.expect_punct("]");
    return CtlFormula::binary(kind, std::move(f), std::move(g));
  }

  // `@( phi )`: the payload is kept verbatim and typed later against a system.
  CtlFormula predicate() {
    const Token& open = ts_.expect_punct("(");
    std::size_t begin = open.offset + 1;
    int depth = 1;
    while (true) {
      if (ts_.at_end()) {
        throw ParseError(open.pos, "unbalanced '(' in @(...)");
      }
      const Token& t = ts_.next();
      if (t.kind == TokenKind::punct && t.text == "(") {
        ++depth;
      } else if (t.kind == TokenKind::punct && t.text == ")" && --depth == 0) {
        std::string_view body = src_.substr(begin, t.offset - begin);
        auto first = body.find_first_not_of(" \t\r\n");
        if (first == std::string_view::npos) {
          throw ParseError(open.pos, "empty state predicate");
        }
        auto last = body.find_last_not_of(" \t\r\n");
        return CtlFormula::predicate(std::string(body.substr(first, last - first + 1)));
      }
    }
  }

  std::string_view src_;
  TokenStream ts_;
};

int precedence(const CtlFormula& f) {
  switch (f.kind()) {
  case K::implication: return 1;
  case K::disjunction: return 2;
  case K::conjunction: return 3;
  case K::au:
  case K::eu: return 5;
  default: return f.is_unary() ? 4 : 5;
  }
}

std::string_view unary_spelling(K kind) {
  if (kind == K::negation) {
    return "!";
  }
  for (auto [word, k] : kTemporal) {
    if (k == kind) {
      return word;
    }
  }
  return "?";
}

void print(const CtlFormula& f, std::string& out) {
  auto wrapped = [&](const CtlFormula& child, bool parens) {
    if (parens) out += '(';
    print(child, out);
    if (parens) out += ')';
  };

  const int prec = precedence(f);
  switch (f.kind()) {
  case K::constant:
    out += f.constant_value() ? "true" : "false";
    return;
  case K::adapting:
    out += "adapting";
    return;
  case K::steady:
    out += "steady";
    return;
  case K::in_state:
    out += "in(" + f.text() + ")";
    return;
  case K::predicate:
    out += "@(" + f.text() + ")";
    return;
  case K::au:
  case K::eu:
    out += f.kind() == K::au ? "A[" : "E[";
    print(f.left(), out);
    out += " U ";
    print(f.right(), out);
    out += "]";
    return;
  case K::implication:
    wrapped(f.left(), precedence(f.left()) <= prec);
    out += " -> ";
    wrapped(f.right(), precedence(f.right()) < prec);
    return;
  case K::conjunction:
  case K::disjunction:
    wrapped(f.left(), precedence(f.left()) < prec);
    out += f.kind() == K::conjunction ? " && " : " || ";
    wrapped(f.right(), precedence(f.right()) <= prec);
    return;
  default: {
    out += unary_spelling(f.kind());
    bool parens = precedence(f.left()) < prec;
    if (!parens && f.kind() != K::negation) {
      out += ' ';
    }
    wrapped(f.left(), parens);
    return;
  }
  }
}

} // namespace

CtlFormula parse_ctl(std::string_view text) { return CtlParser(text).parse_all(); }

std::string to_string(const CtlFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::size_t depth(const CtlFormula& f) {
  if (f.is_atom()) {
    return 0;
  }
  if (f.is_unary()) {
    return 1 + depth(f.left());
  }
  return 1 + std::max(depth(f.left()), depth(f.right()));
}

const CtlFormula& weak_adaptability_formula() {
  static const CtlFormula f = parse_ctl("EG(adapting -> EF steady)");
  return f;
}

const CtlFormula& strong_adaptability_formula() {
  static const CtlFormula f = parse_ctl("AG(adapting -> AF steady)");
  return f;
}

} // namespace sbcheck
