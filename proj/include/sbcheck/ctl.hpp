#pragma once

// CTL over flattened systems: AST and parser, an explicit-state labeling
// checker, an independent fixpoint oracle, and the adaptability formulas
// EG(adapting -> EF steady) / AG(adapting -> AF steady).

#include "sbcheck/flat.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sbcheck {

class CtlFormula {
public:
  enum class Kind {
    constant,
    adapting,
    steady,
    in_state,   // in(r)
    predicate,  // @(phi), phi over the observables
    negation,
    conjunction,
    disjunction,
    implication,
    ax, ex, af, ef, ag, eg,
    au, eu,
  };

  static CtlFormula constant(bool value);
  static CtlFormula adapting();
  static CtlFormula steady();
  static CtlFormula in_state(std::string sstate);
  static CtlFormula predicate(std::string formula_text);
  static CtlFormula unary(Kind kind, CtlFormula f);
  static CtlFormula binary(Kind kind, CtlFormula a, CtlFormula b);

  Kind kind() const { return node_->kind; }
  bool constant_value() const { return node_->constant; }
  /// S-state name for in(r), formula text for @(phi).
  const std::string& text() const { return node_->text; }
  const CtlFormula& left() const { return *node_->left; }
  const CtlFormula& right() const { return *node_->right; }

  bool is_atom() const;
  bool is_unary() const;
  bool is_binary() const;

  friend bool operator==(const CtlFormula& a, const CtlFormula& b);

private:
  struct Node {
    Kind kind = Kind::constant;
    bool constant = true;
    std::string text;
    std::shared_ptr<const CtlFormula> left, right;
  };

  explicit CtlFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Throws ParseError with the position of the offending token.
CtlFormula parse_ctl(std::string_view text);
std::string to_string(const CtlFormula& f);
std::size_t depth(const CtlFormula& f);

/// EG(adapting -> EF steady)
const CtlFormula& weak_adaptability_formula();
/// AG(adapting -> AF steady)
const CtlFormula& strong_adaptability_formula();

using StateSet = std::vector<bool>;

/// Finite Kripke structure with a total transition relation.
struct Kripke {
  std::vector<std::vector<std::size_t>> successors;
  std::size_t init = 0;
  /// Satisfying set of an atomic formula other than a constant.
  std::function<StateSet(const CtlFormula& atom)> atoms;

  std::size_t size() const { return successors.size(); }
};

/// Adds a self-loop to every state without successors.
Kripke totalize(std::vector<std::vector<std::size_t>> successors, std::size_t init,
                std::function<StateSet(const CtlFormula&)> atoms);

/// Kripke view of a flat LTS (totalized). Atom errors (unknown S-state in
/// in(r), ill-typed @(phi)) surface when the atom is evaluated.
Kripke kripke_of(const FlatLTS& lts, const SBSystem& sys);

/// Throws ModelError/ParseError if an atom of `f` does not make sense for `sys`.
void validate_atoms(const CtlFormula& f, const SBSystem& sys);

/// Finite path, or a lasso when `loop_start` is set (the last state steps
/// back to states[*loop_start]).
struct Trace {
  std::vector<std::size_t> states;
  std::optional<std::size_t> loop_start;
};

struct CheckResult {
  StateSet satisfying;
  bool holds_at_init = false;
  /// Witness when the formula holds at init, counterexample otherwise, for
  /// the shapes where a finite explanation exists (EX/EF/EU/EG witnesses,
  /// AX/AF/AG counterexamples, and implications below them).
  std::optional<Trace> trace;
};

CheckResult check_ctl(const Kripke& k, const CtlFormula& f);
CheckResult check_ctl(const FlatLTS& lts, const SBSystem& sys, const CtlFormula& f);

/// Reference semantics: every operator, A-quantified ones included, by
/// its own naive fixpoint iteration. Meant for small structures.
StateSet ctl_oracle(const Kripke& k, const CtlFormula& f);

bool weak_adaptable_ctl(const FlatLTS& lts, const SBSystem& sys);
bool strong_adaptable_ctl(const FlatLTS& lts, const SBSystem& sys);

} // namespace sbcheck
