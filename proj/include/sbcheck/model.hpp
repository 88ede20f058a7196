#pragma once

// Two-level system data model: behaviour machine, observation map and
// structure machine, plus well-formedness checking.

#include "sbcheck/formula.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace sbcheck {

using BState = std::size_t;
using SState = std::size_t;

struct BehaviourMachine {
  std::vector<std::string> states;                // sorted by id
  BState init = 0;
  std::vector<std::vector<BState>> successors;   // sorted, no duplicates

  bool operator==(const BehaviourMachine&) const = default;
};

/// Total map from B-states to valuations. Need not be injective.
struct ObservationMap {
  std::vector<Valuation> table;

  bool operator==(const ObservationMap&) const = default;
};

struct STransition {
  SState from = 0;
  std::size_t invariant = 0;  // index into StructureMachine::invariants
  SState to = 0;

  auto operator<=>(const STransition&) const = default;
};

struct StructureMachine {
  std::vector<std::string> states;   // sorted by id
  SState init = 0;
  std::vector<Formula> labels;       // L(r), indexed like states
  std::vector<Formula> invariants;   // distinct invariants, ordered by printed text
  std::vector<STransition> transitions;  // sorted, no duplicates

  std::vector<STransition> outgoing(SState r) const;

  bool operator==(const StructureMachine&) const = default;
};

/// Immutable once built; construct through SystemBuilder.
class SBSystem {
public:
  const std::string& name() const { return name_; }
  const Observables& observables() const { return observables_; }
  const BehaviourMachine& behaviour() const { return behaviour_; }
  const ObservationMap& observation() const { return observation_; }
  const StructureMachine& structure() const { return structure_; }

  std::size_t bstate_count() const { return behaviour_.states.size(); }
  std::size_t sstate_count() const { return structure_.states.size(); }
  const std::string& bstate_name(BState q) const { return behaviour_.states[q]; }
  const std::string& sstate_name(SState r) const { return structure_.states[r]; }
  std::optional<BState> find_bstate(std::string_view id) const;
  std::optional<SState> find_sstate(std::string_view id) const;

  /// q ⊨ f
  bool satisfies(BState q, const Formula& f) const { return evaluate(f, observation_.table[q]); }
  /// q ⊨ L(r)
  bool in_region(BState q, SState r) const { return satisfies(q, structure_.labels[r]); }

  bool operator==(const SBSystem&) const = default;

private:
  friend class SystemBuilder;

  std::string name_;
  Observables observables_;
  BehaviourMachine behaviour_;
  ObservationMap observation_;
  StructureMachine structure_;
};

/// Incremental, validating construction of an SBSystem. Structural errors
/// are reported eagerly as ModelError so callers can attach positions.
/// States must be declared before transitions mentioning them.
class SystemBuilder {
public:
  SystemBuilder() = default;
  /// Starts from an existing system, e.g. to derive a mutant.
  explicit SystemBuilder(const SBSystem& base);

  SystemBuilder& name(std::string n);
  SystemBuilder& observable(std::string name, Domain domain);

  SystemBuilder& bstate(const std::string& id, const std::vector<std::pair<std::string, Literal>>& bindings,
                        bool init = false);
  SystemBuilder& btransition(const std::string& from, const std::string& to);

  SystemBuilder& sstate(const std::string& id, std::string_view label, bool init = false);
  SystemBuilder& sstate(const std::string& id, Formula label, bool init = false);
  SystemBuilder& stransition(const std::string& from, std::string_view invariant, const std::string& to);
  SystemBuilder& stransition(const std::string& from, Formula invariant, const std::string& to);

  // Mutation helpers.
  SystemBuilder& set_binit(const std::string& id);
  SystemBuilder& set_sinit(const std::string& id);
  SystemBuilder& relabel(const std::string& sstate, std::string_view label);
  SystemBuilder& remove_btransition(const std::string& from, const std::string& to);
  SystemBuilder& remove_stransition(const std::string& from, const std::string& invariant_text,
                                    const std::string& to);

  const Observables& observables() const { return observables_; }

  /// Throws ModelError when an init state is missing.
  SBSystem build() const;

private:
  void require_bstate(const std::string& id) const;
  void require_sstate(const std::string& id) const;

  std::string name_ = "unnamed";
  Observables observables_;
  std::map<std::string, Valuation> bstates_;
  std::optional<std::string> binit_;
  std::set<std::pair<std::string, std::string>> btrans_;
  std::map<std::string, Formula> sstates_;
  std::optional<std::string> sinit_;
  std::map<std::string, Formula> invariants_;  // keyed by printed text
  std::set<std::tuple<std::string, std::string, std::string>> strans_;
};

/// Observation recorded for q. Throws ModelError for an unknown state.
const Valuation& observe(const SBSystem& sys, BState q);
const Valuation& observe(const SBSystem& sys, std::string_view id);

/// [[f]]: the B-states satisfying f.
std::vector<BState> sat_set(const Formula& f, const SBSystem& sys);

/// B-states admissible under S-state r, i.e. [[L(r)]].
std::vector<BState> constraint_region(const SBSystem& sys, SState r);

struct Violation {
  enum class Kind { unsatisfiable_label, initial_state_outside_region };

  Kind kind;
  SState sstate;
  std::string message;
};

struct WellFormedness {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Every L(r) must hold for some B-state, and q0 ⊨ L(r0).
WellFormedness check_well_formed(const SBSystem& sys);

} // namespace sbcheck
