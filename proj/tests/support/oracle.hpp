#pragma once

// Brute-force reference implementations: the flat rules applied by
// enumerating every candidate target state, and the adaptability
// relations decided by explicit path enumeration over those rules.

#include "sbcheck/adapt.hpp"
#include "sbcheck/flat.hpp"

#include <set>
#include <tuple>
#include <vector>

namespace sbtest {

using OracleEdge = std::tuple<sbcheck::FlatState, sbcheck::FlatState, sbcheck::Rule>;

/// All (s, t, rule) licensed at s, found by testing every t in
/// Q × R × ({∅} ∪ invariants × R) against the premises of every rule.
std::vector<OracleEdge> oracle_successors(const sbcheck::SBSystem& sys, const sbcheck::FlatState& s);

struct OracleFlat {
  std::set<sbcheck::FlatState> states;
  std::set<OracleEdge> edges;
};

/// Reachable fragment by naive closure.
OracleFlat oracle_flatten(const sbcheck::SBSystem& sys);

/// Greatest fixpoints with every clause decided by enumerating flat paths.
sbcheck::AdaptRelation oracle_weak(const sbcheck::SBSystem& sys);
sbcheck::AdaptRelation oracle_strong(const sbcheck::SBSystem& sys,
                                     sbcheck::StrongReading reading = sbcheck::StrongReading::all_branches);

} // namespace sbtest
