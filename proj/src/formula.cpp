#include "sbcheck/formula.hpp"

#include "lexer.hpp"

#include <algorithm>

namespace sbcheck {

// ---------------------------------------------------------------------------
// Domains and declarations

Domain Domain::boolean() { return Domain(Kind::boolean, 0, 1, {}); }

Domain Domain::range(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw ModelError("empty integer range [" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
  }
  return Domain(Kind::integer, lo, hi, {});
}

Domain Domain::enumeration(std::vector<std::string> labels) {
  if (labels.empty()) {
    throw ModelError("enumeration without values");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (std::find(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(i), labels[i]) !=
        labels.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw ModelError("duplicate enumeration value '" + labels[i] + "'");
    }
  }
  auto hi = static_cast<std::int64_t>(labels.size()) - 1;
  return Domain(Kind::enumeration, 0, hi, std::move(labels));
}

std::optional<Value> Domain::label_index(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    return std::nullopt;
  }
  return static_cast<Value>(it - labels_.begin());
}

std::string Domain::format_value(Value v) const {
  switch (kind_) {
  case Kind::boolean:
    return v != 0 ? "true" : "false";
  case Kind::integer:
    return std::to_string(v);
  case Kind::enumeration:
    return labels_.at(static_cast<std::size_t>(v));
  }
  return {};
}

std::string Domain::to_string() const {
  switch (kind_) {
  case Kind::boolean:
    return "bool";
  case Kind::integer:
    return "int[" + std::to_string(lo_) + ".." + std::to_string(hi_) + "]";
  case Kind::enumeration: {
    std::string s = "enum{";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      s += (i ? ", " : "") + labels_[i];
    }
    return s + "}";
  }
  }
  return {};
}

std::size_t Observables::add(ObservableDecl decl) {
  if (find(decl.name)) {
    throw ModelError("duplicate observable '" + decl.name + "'");
  }
  decls_.push_back(std::move(decl));
  return decls_.size() - 1;
}

std::optional<std::size_t> Observables::find(std::string_view name) const {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    if (decls_[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::string format_valuation(const Valuation& v, const Observables& obs) {
  std::string s = "(";
  for (std::size_t i = 0; i < obs.size(); ++i) {
    s += (i ? ", " : "") + obs[i].name + "=" + obs[i].domain.format_value(v[i]);
  }
  return s + ")";
}

Value encode_literal(const Domain& domain, const Literal& lit) {
  switch (domain.kind()) {
  case Domain::Kind::boolean:
    if (const bool* b = std::get_if<bool>(&lit)) {
      return *b ? 1 : 0;
    }
    throw ModelError("expected a boolean value");
  case Domain::Kind::integer:
    if (const std::int64_t* i = std::get_if<std::int64_t>(&lit)) {
      if (!domain.contains(*i)) {
        throw ModelError("value " + std::to_string(*i) + " outside " + domain.to_string());
      }
      return *i;
    }
    throw ModelError("expected an integer value");
  case Domain::Kind::enumeration:
    if (const std::string* s = std::get_if<std::string>(&lit)) {
      if (auto idx = domain.label_index(*s)) {
        return *idx;
      }
      throw ModelError("'" + *s + "' is not a value of " + domain.to_string());
    }
    throw ModelError("expected an enumeration value");
  }
  return 0;
}

std::string_view to_string(CmpOp op) {
  switch (op) {
  case CmpOp::eq: return "==";
  case CmpOp::ne: return "!=";
  case CmpOp::lt: return "<";
  case CmpOp::le: return "<=";
  case CmpOp::gt: return ">";
  case CmpOp::ge: return ">=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// AST

Formula Formula::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->constant = value;
  return Formula(std::move(n));
}

Formula Formula::variable(std::size_t index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->var = index;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::compare(CmpOp op, Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::comparison;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::negation;
  n->left = std::make_shared<const Formula>(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::binary(Kind kind, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->left = std::make_shared<const Formula>(std::move(a));
  n->right = std::make_shared<const Formula>(std::move(b));
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) { return binary(Kind::conjunction, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(Kind::disjunction, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(Kind::implication, std::move(a), std::move(b)); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (a.kind() != b.kind()) {
    return false;
  }
  switch (a.kind()) {
  case Formula::Kind::constant:
    return a.constant_value() == b.constant_value();
  case Formula::Kind::variable:
    return a.var() == b.var() && a.var_name() == b.var_name();
  case Formula::Kind::comparison:
    return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  case Formula::Kind::negation:
    return a.left() == b.left();
  case Formula::Kind::conjunction:
  case Formula::Kind::disjunction:
  case Formula::Kind::implication:
    return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

// Static type of a term; `enum_var` identifies the enumeration by one of
// its variables, `label` marks a bare enumeration value still untyped.
struct TermType {
  enum class Kind { integer, boolean, enumeration, label } kind;
  std::size_t enum_var = 0;
};

class FormulaParser {
public:
  FormulaParser(TokenStream tokens, const Observables& decls) : ts_(std::move(tokens)), decls_(decls) {}

  Formula parse_all() {
    if (ts_.at_end()) {
      ts_.fail("empty formula");
    }
    Formula f = implication();
    if (!ts_.at_end()) {
      ts_.fail("unexpected " + detail::describe(ts_.peek()));
    }
    return f;
  }

private:
  Formula implication() {
    Formula lhs = disjunction();
    if (ts_.accept_punct("->")) {
      return Formula::implication(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (ts_.accept_punct("||")) {
      f = Formula::disjunction(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (ts_.accept_punct("&&")) {
      f = Formula::conjunction(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    if (ts_.accept_punct("!")) {
      return Formula::negation(unary());
    }
    return primary();
  }

  Formula primary() {
    if (ts_.accept_punct("(")) {
      Formula f = implication();
      ts_.expect_punct(")");
      return f;
    }
    if (ts_.accept_word("true")) {
      return Formula::constant(true);
    }
    if (ts_.accept_word("false")) {
      return Formula::constant(false);
    }

    const Token start = ts_.peek();
    Term lhs = term();
    if (auto op = comparison_op()) {
      Term rhs = term();
      return typed_comparison(start, *op, std::move(lhs), std::move(rhs));
    }

    // A lone term must be a boolean variable.
    if (lhs.parts.size() == 1 && lhs.parts[0].operand.kind == Operand::Kind::variable) {
      const Operand& o = lhs.parts[0].operand;
      if (decls_[o.var].domain.kind() == Domain::Kind::boolean) {
        return Formula::variable(o.var, o.name);
      }
      throw ParseError(start.pos, "'" + o.name + "' is not boolean; expected a comparison");
    }
    throw ParseError(start.pos, "expected a comparison operator after term");
  }

  std::optional<CmpOp> comparison_op() {
    static constexpr std::pair<std::string_view, CmpOp> ops[] = {
        {"==", CmpOp::eq}, {"!=", CmpOp::ne}, {"<=", CmpOp::le},
        {">=", CmpOp::ge}, {"<", CmpOp::lt},  {">", CmpOp::gt},
    };
    for (auto [text, op] : ops) {
      if (ts_.accept_punct(text)) {
        return op;
      }
    }
    return std::nullopt;
  }

  Term term() {
    Term t(operand());
    while (true) {
      if (ts_.accept_punct("+")) {
        t.plus(operand());
      } else if (ts_.is_punct("-")) {
        ts_.next();
        t.minus(operand());
      } else {
        return t;
      }
    }
  }

  Operand operand() {
    const Token& tok = ts_.peek();
    if (ts_.accept_punct("-")) {
      const Token& lit = ts_.expect(TokenKind::integer, "integer after '-'");
      return Operand::literal(-lit.value);
    }
    if (tok.kind == TokenKind::integer) {
      ts_.next();
      return Operand::literal(tok.value);
    }
    if (tok.kind == TokenKind::identifier) {
      if (tok.text == "true" || tok.text == "false") {
        ts_.fail("boolean constant cannot be used as a term");
      }
      Token ident = ts_.next();
      if (auto idx = decls_.find(ident.text)) {
        return Operand::variable(*idx, ident.text);
      }
      for (const auto& d : decls_) {
        if (d.domain.kind() == Domain::Kind::enumeration && d.domain.label_index(ident.text)) {
          return Operand::label(-1, ident.text);
        }
      }
      throw ParseError(ident.pos, "undeclared variable '" + ident.text + "'");
    }
    ts_.fail("expected a term, found " + detail::describe(tok));
  }

  TermType type_of(const Token& at, const Term& t) const {
    if (t.parts.size() > 1) {
      for (const auto& s : t.parts) {
        const Operand& o = s.operand;
        bool is_int = o.kind == Operand::Kind::literal ||
                      (o.kind == Operand::Kind::variable &&
                       decls_[o.var].domain.kind() == Domain::Kind::integer);
        if (!is_int) {
          throw ParseError(at.pos, "type mismatch: '" + o.name + "' used in integer arithmetic");
        }
      }
      return {TermType::Kind::integer};
    }
    const Operand& o = t.parts[0].operand;
    switch (o.kind) {
    case Operand::Kind::literal:
      return {TermType::Kind::integer};
    case Operand::Kind::label:
      return {TermType::Kind::label};
    case Operand::Kind::variable:
      switch (decls_[o.var].domain.kind()) {
      case Domain::Kind::boolean:
        return {TermType::Kind::boolean};
      case Domain::Kind::integer:
        return {TermType::Kind::integer};
      case Domain::Kind::enumeration:
        return {TermType::Kind::enumeration, o.var};
      }
    }
    return {TermType::Kind::integer};
  }

  Formula typed_comparison(const Token& at, CmpOp op, Term lhs, Term rhs) {
    TermType a = type_of(at, lhs);
    TermType b = type_of(at, rhs);
    bool equality = op == CmpOp::eq || op == CmpOp::ne;
    using K = TermType::Kind;

    auto mismatch = [&](const std::string& why) -> ParseError { return ParseError(at.pos, "type mismatch: " + why); };

    if (a.kind == K::integer || b.kind == K::integer) {
      if (a.kind != b.kind) {
        throw mismatch("integer compared with non-integer");
      }
      return Formula::compare(op, std::move(lhs), std::move(rhs));
    }
    if (!equality) {
      throw mismatch("only == and != apply to boolean and enumeration values");
    }
    if (a.kind == K::boolean || b.kind == K::boolean) {
      if (a.kind != b.kind) {
        throw mismatch("boolean compared with non-boolean");
      }
      return Formula::compare(op, std::move(lhs), std::move(rhs));
    }
    if (a.kind == K::label && b.kind == K::label) {
      throw mismatch("cannot compare two enumeration values without a variable");
    }
    if (a.kind == K::enumeration && b.kind == K::enumeration) {
      if (decls_[a.enum_var].domain != decls_[b.enum_var].domain) {
        throw mismatch("variables of different enumerations");
      }
      return Formula::compare(op, std::move(lhs), std::move(rhs));
    }
    // one enumeration variable and one bare label
    const Domain& dom = decls_[a.kind == K::enumeration ? a.enum_var : b.enum_var].domain;
    Operand& lab = (a.kind == K::label ? lhs : rhs).parts[0].operand;
    auto idx = dom.label_index(lab.name);
    if (!idx) {
      throw mismatch("'" + lab.name + "' is not a value of " + dom.to_string());
    }
    lab.value = *idx;
    return Formula::compare(op, std::move(lhs), std::move(rhs));
  }

  TokenStream ts_;
  const Observables& decls_;
};

} // namespace

Formula parse_formula(std::string_view text, const Observables& decls, SourcePos origin) {
  FormulaParser p(TokenStream(detail::tokenize(text, origin)), decls);
  return p.parse_all();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
  case Formula::Kind::implication: return 1;
  case Formula::Kind::disjunction: return 2;
  case Formula::Kind::conjunction: return 3;
  case Formula::Kind::negation: return 4;
  default: return 5;
  }
}

std::string term_string(const Term& t) {
  std::string s;
  for (std::size_t i = 0; i < t.parts.size(); ++i) {
    const auto& part = t.parts[i];
    if (i > 0) {
      s += part.negated ? " - " : " + ";
    }
    const Operand& o = part.operand;
    s += o.kind == Operand::Kind::literal ? std::to_string(o.value) : o.name;
  }
  return s;
}

void print(const Formula& f, std::string& out) {
  auto wrapped = [&](const Formula& child, bool parens) {
    if (parens) {
      out += '(';
    }
    print(child, out);
    if (parens) {
      out += ')';
    }
  };

  const int prec = precedence(f.kind());
  switch (f.kind()) {
  case Formula::Kind::constant:
    out += f.constant_value() ? "true" : "false";
    return;
  case Formula::Kind::variable:
    out += f.var_name();
    return;
  case Formula::Kind::comparison:
    out += term_string(f.lhs());
    out += ' ';
    out += to_string(f.op());
    out += ' ';
    out += term_string(f.rhs());
    return;
  case Formula::Kind::negation:
    out += '!';
    // comparisons are parenthesized so that `!` never reads as part of a term
    wrapped(f.left(), precedence(f.left().kind()) < prec || f.left().kind() == Formula::Kind::comparison);
    return;
  case Formula::Kind::implication:
    wrapped(f.left(), precedence(f.left().kind()) <= prec);
    out += " -> ";
    wrapped(f.right(), precedence(f.right().kind()) < prec);
    return;
  case Formula::Kind::conjunction:
  case Formula::Kind::disjunction:
    wrapped(f.left(), precedence(f.left().kind()) < prec);
    out += f.kind() == Formula::Kind::conjunction ? " && " : " || ";
    wrapped(f.right(), precedence(f.right().kind()) <= prec);
    return;
  }
}

} // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Semantics

namespace {

using Wide = __int128;

Wide term_value(const Term& t, const Valuation& v) {
  Wide sum = 0;
  for (const auto& part : t.parts) {
    const Operand& o = part.operand;
    Wide x = o.kind == Operand::Kind::variable ? v[o.var] : o.value;
    sum += part.negated ? -x : x;
  }
  return sum;
}

} // namespace

bool evaluate(const Formula& f, const Valuation& v) {
  switch (f.kind()) {
  case Formula::Kind::constant:
    return f.constant_value();
  case Formula::Kind::variable:
    return v[f.var()] != 0;
  case Formula::Kind::comparison: {
    Wide a = term_value(f.lhs(), v);
    Wide b = term_value(f.rhs(), v);
    switch (f.op()) {
    case CmpOp::eq: return a == b;
    case CmpOp::ne: return a != b;
    case CmpOp::lt: return a < b;
    case CmpOp::le: return a <= b;
    case CmpOp::gt: return a > b;
    case CmpOp::ge: return a >= b;
    }
    return false;
  }
  case Formula::Kind::negation:
    return !evaluate(f.left(), v);
  case Formula::Kind::conjunction:
    return evaluate(f.left(), v) && evaluate(f.right(), v);
  case Formula::Kind::disjunction:
    return evaluate(f.left(), v) || evaluate(f.right(), v);
  case Formula::Kind::implication:
    return !evaluate(f.left(), v) || evaluate(f.right(), v);
  }
  return false;
}

namespace {

void collect(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
  case Formula::Kind::constant:
    return;
  case Formula::Kind::variable:
    out.insert(f.var_name());
    return;
  case Formula::Kind::comparison:
    for (const Term* t : {&f.lhs(), &f.rhs()}) {
      for (const auto& part : t->parts) {
        if (part.operand.kind == Operand::Kind::variable) {
          out.insert(part.operand.name);
        }
      }
    }
    return;
  case Formula::Kind::negation:
    collect(f.left(), out);
    return;
  default:
    collect(f.left(), out);
    collect(f.right(), out);
    return;
  }
}

} // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  collect(f, out);
  return out;
}

std::vector<std::size_t> sat_set(const Formula& f, std::span<const Valuation> observations) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (evaluate(f, observations[i])) {
      out.push_back(i);
    }
  }
  return out;
}

} // namespace sbcheck
