#pragma once

// Flattened operational semantics: states (q, r, ρ), the four rules
// Steady / AdaptStart / Adapt / AdaptEnd, reachable-fragment exploration,
// state classification and DOT/JSON export.

#include "sbcheck/model.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sbcheck {

/// The pending adaptation ρ = {(φ, r')}.
struct Pending {
  std::size_t invariant = 0;  // index into StructureMachine::invariants
  SState target = 0;

  auto operator<=>(const Pending&) const = default;
};

/// Ordered by B-state, then S-state, then invariant text, then target; this
/// order fixes exploration and export order.
struct FlatState {
  BState q = 0;
  SState r = 0;
  std::optional<Pending> pending;

  auto operator<=>(const FlatState&) const = default;
};

enum class Rule { steady, adapt_start, adapt, adapt_end };

/// Transition label: `r` alone for steady moves, `(r, φ, r')` while adapting.
struct FlatLabel {
  bool adapting = false;
  SState r = 0;
  std::optional<Pending> adaptation;

  bool operator==(const FlatLabel&) const = default;
};

struct FlatTransition {
  FlatState from;
  FlatState to;
  Rule rule = Rule::steady;

  FlatLabel label() const;

  auto operator<=>(const FlatTransition&) const = default;
};

enum class StateClass { steady, adapting, stuck };

std::string_view to_string(Rule rule);
std::string_view to_string(StateClass c);

/// Every transition licensed by the four rules from `s`, ordered by target.
std::vector<FlatTransition> successors(const SBSystem& sys, const FlatState& s);

/// Adapting iff some outgoing transition is adapting; steady iff ρ = ∅ and
/// not adapting; stuck iff ρ ≠ ∅ and no outgoing transition.
StateClass classify(const SBSystem& sys, const FlatState& s);

struct FlatLTS {
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    Rule rule = Rule::steady;

    auto operator<=>(const Edge&) const = default;
  };

  std::vector<FlatState> states;  // breadth-first discovery order
  std::size_t init = 0;
  std::vector<Edge> transitions;  // sorted by (from, to)
  std::vector<StateClass> classes;

  std::optional<std::size_t> find(const FlatState& s) const;
  std::vector<std::vector<std::size_t>> successor_lists() const;

  bool operator==(const FlatLTS&) const = default;
};

/// Reachable fragment from (q0, r0, ∅). Expects a well-formed system.
FlatLTS flatten(const SBSystem& sys);

/// "(q, r, -)" or "(q, r, {(φ, r')})"
std::string format_state(const FlatState& s, const SBSystem& sys);

std::string export_dot(const FlatLTS& lts, const SBSystem& sys);
std::string export_json(const FlatLTS& lts, const SBSystem& sys);

/// Inverse of export_json; names are resolved against `sys`. Throws
/// ParseError on malformed documents.
FlatLTS import_json(std::string_view text, const SBSystem& sys);

} // namespace sbcheck
