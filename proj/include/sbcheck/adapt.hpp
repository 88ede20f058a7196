#pragma once

// Relational characterization of adaptability: weak and strong
// adaptability relations as greatest fixpoints over Q × R, and the
// induced adaptation equivalences on B-states.

#include "sbcheck/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sbcheck {

enum class AdaptKind { weak, strong };

/// How the strong clause quantifies over the adaptations that AdaptStart
/// opens towards a violating successor q'.
///
/// `all_branches`: at least one adaptation starts, and every one of them
/// has only finite paths ending in a related target pair. This is the
/// reading under which the relational and CTL verdicts coincide on the
/// predator-prey models.
///
/// `some_branch`: one adaptation with that property suffices (the formula
/// read word for word).
enum class StrongReading { all_branches, some_branch };

std::string_view to_string(AdaptKind kind);

class AdaptRelation {
public:
  AdaptRelation(AdaptKind kind, std::size_t bstates, std::size_t sstates)
      : kind_(kind), sstates_(sstates), bits_(bstates * sstates, false) {}

  AdaptKind kind() const { return kind_; }
  std::size_t bstate_count() const { return sstates_ ? bits_.size() / sstates_ : 0; }
  std::size_t sstate_count() const { return sstates_; }

  bool contains(BState q, SState r) const { return bits_[q * sstates_ + r]; }
  void set(BState q, SState r, bool v) { bits_[q * sstates_ + r] = v; }

  std::vector<std::pair<BState, SState>> pairs() const;
  std::size_t size() const;

  /// Pairwise inclusion, ignoring kind.
  bool subset_of(const AdaptRelation& other) const;

  bool operator==(const AdaptRelation&) const = default;

private:
  AdaptKind kind_;
  std::size_t sstates_;
  std::vector<bool> bits_;
};

/// {(q, r) | q ⊨ L(r)}: the starting candidate of both fixpoints.
AdaptRelation initial_candidate(const SBSystem& sys, AdaptKind kind);

/// One refinement step: the pairs of `candidate` whose clause holds when
/// the recursive occurrences are read as `candidate`.
AdaptRelation refine(const SBSystem& sys, const AdaptRelation& candidate,
                     StrongReading reading = StrongReading::all_branches);

AdaptRelation weak_relation(const SBSystem& sys);
AdaptRelation strong_relation(const SBSystem& sys, StrongReading reading = StrongReading::all_branches);

bool is_weak_adaptable(const SBSystem& sys);
bool is_strong_adaptable(const SBSystem& sys, StrongReading reading = StrongReading::all_branches);

struct EquivPartition {
  AdaptKind kind;
  std::vector<std::vector<BState>> blocks;  // each sorted; blocks ordered by first member

  /// Index of the block holding q.
  std::size_t block_of(BState q) const;
};

/// q1 and q2 share a block iff their rows in `rel` coincide.
EquivPartition partition_of(const AdaptRelation& rel);
EquivPartition equiv_partition(const SBSystem& sys, AdaptKind kind,
                               StrongReading reading = StrongReading::all_branches);

/// {"kind":"weak"|"strong","pairs":[["q","r"],...]}
std::string relation_json(const AdaptRelation& rel, const SBSystem& sys);

} // namespace sbcheck
