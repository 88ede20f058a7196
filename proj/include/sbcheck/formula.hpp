#pragma once

// Constraint language over finite-domain observables: declarations,
// valuations, the formula AST, its parser/printer and evaluation.

#include "sbcheck/error.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sbcheck {

/// Encoded observable value: 0/1 for booleans, the integer itself for
/// ranges, the label index for enumerations.
using Value = std::int64_t;

class Domain {
public:
  enum class Kind { boolean, integer, enumeration };

  static Domain boolean();
  static Domain range(std::int64_t lo, std::int64_t hi);
  static Domain enumeration(std::vector<std::string> labels);

  Kind kind() const { return kind_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(Value v) const { return v >= lo_ && v <= hi_; }
  std::optional<Value> label_index(std::string_view label) const;
  std::string format_value(Value v) const;
  std::string to_string() const;

  bool operator==(const Domain&) const = default;

private:
  Domain(Kind kind, std::int64_t lo, std::int64_t hi, std::vector<std::string> labels)
      : kind_(kind), lo_(lo), hi_(hi), labels_(std::move(labels)) {}

  Kind kind_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::string> labels_;
};

struct ObservableDecl {
  std::string name;
  Domain domain;

  bool operator==(const ObservableDecl&) const = default;
};

/// Ordered set of observable declarations with unique names.
class Observables {
public:
  /// Throws ModelError on a duplicate name.
  std::size_t add(ObservableDecl decl);

  std::optional<std::size_t> find(std::string_view name) const;
  const ObservableDecl& operator[](std::size_t i) const { return decls_[i]; }
  std::size_t size() const { return decls_.size(); }
  auto begin() const { return decls_.begin(); }
  auto end() const { return decls_.end(); }

  bool operator==(const Observables&) const = default;

private:
  std::vector<ObservableDecl> decls_;
};

/// Total assignment of values, indexed like the owning Observables.
class Valuation {
public:
  Valuation() = default;
  explicit Valuation(std::vector<Value> values) : values_(std::move(values)) {}

  Value operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Value>& values() const { return values_; }

  auto operator<=>(const Valuation&) const = default;

private:
  std::vector<Value> values_;
};

/// "(p=0, a0=1, eat=true)"
std::string format_valuation(const Valuation& v, const Observables& obs);

/// A value as written in source text or code: `true`, `3`, `red`.
using Literal = std::variant<bool, std::int64_t, std::string>;

/// Encodes `lit` for `domain`; throws ModelError when the literal has the
/// wrong kind or lies outside the domain.
Value encode_literal(const Domain& domain, const Literal& lit);

enum class CmpOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(CmpOp op);

struct Operand {
  enum class Kind { literal, variable, label };

  Kind kind = Kind::literal;
  Value value = 0;       // literal value, or label index once resolved
  std::size_t var = 0;   // observable index for variables
  std::string name;      // variable or label spelling

  static Operand literal(Value v) { return {Kind::literal, v, 0, {}}; }
  static Operand variable(std::size_t index, std::string name) { return {Kind::variable, 0, index, std::move(name)}; }
  static Operand label(Value index, std::string name) { return {Kind::label, index, 0, std::move(name)}; }

  bool operator==(const Operand&) const = default;
};

/// Linear term `o1 (+|-) o2 (+|-) ...`, kept flat because the concrete
/// syntax has no parentheses inside terms.
struct Term {
  struct Summand {
    bool negated = false;
    Operand operand;
    bool operator==(const Summand&) const = default;
  };
  std::vector<Summand> parts;

  Term() = default;
  Term(Operand single) : parts{{false, std::move(single)}} {}

  Term& plus(Operand o) {
    parts.push_back({false, std::move(o)});
    return *this;
  }
  Term& minus(Operand o) {
    parts.push_back({true, std::move(o)});
    return *this;
  }

  bool operator==(const Term&) const = default;
};

class Formula {
public:
  enum class Kind { constant, variable, comparison, negation, conjunction, disjunction, implication };

  static Formula constant(bool value);
  static Formula variable(std::size_t index, std::string name);
  static Formula compare(CmpOp op, Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);

  Formula() : Formula(constant(true)) {}

  Kind kind() const { return node_->kind; }
  bool constant_value() const { return node_->constant; }
  std::size_t var() const { return node_->var; }
  const std::string& var_name() const { return node_->name; }
  CmpOp op() const { return node_->op; }
  const Term& lhs() const { return node_->lhs; }
  const Term& rhs() const { return node_->rhs; }
  /// Operand of a negation, left operand of a binary connective.
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node {
    Kind kind = Kind::constant;
    bool constant = true;
    std::size_t var = 0;
    std::string name;
    CmpOp op = CmpOp::eq;
    Term lhs, rhs;
    std::shared_ptr<const Formula> left, right;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula binary(Kind kind, Formula a, Formula b);

  std::shared_ptr<const Node> node_;
};

/// Parses and type-checks `text` against `decls`. `origin` shifts reported
/// positions when the text is embedded in a larger file.
Formula parse_formula(std::string_view text, const Observables& decls, SourcePos origin = {});

/// Canonical concrete syntax with minimal parentheses; reparses to an equal AST.
std::string to_string(const Formula& f);

/// Truth of `f` under `v`. Arithmetic is exact (128-bit), so no overflow on
/// well-typed input.
bool evaluate(const Formula& f, const Valuation& v);

std::set<std::string> free_vars(const Formula& f);

/// Indices of the observations satisfying `f`, in increasing order.
std::vector<std::size_t> sat_set(const Formula& f, std::span<const Valuation> observations);

} // namespace sbcheck
