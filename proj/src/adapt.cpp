#include "sbcheck/adapt.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace sbcheck {

std::string_view to_string(AdaptKind kind) { return kind == AdaptKind::weak ? "weak" : "strong"; }

std::vector<std::pair<BState, SState>> AdaptRelation::pairs() const {
  std::vector<std::pair<BState, SState>> out;
  for (BState q = 0; q < bstate_count(); ++q) {
    for (SState r = 0; r < sstates_; ++r) {
      if (contains(q, r)) {
        out.emplace_back(q, r);
      }
    }
  }
  return out;
}

std::size_t AdaptRelation::size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

bool AdaptRelation::subset_of(const AdaptRelation& other) const {
  if (bits_.size() != other.bits_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) {
      return false;
    }
  }
  return true;
}

namespace {

// Behaviour of one adaptation (φ, r') started at some B-state: the nodes
// are B-states, a node satisfying L(r') is an end (AdaptEnd is its only
// move), every other node moves to its B-successors satisfying φ.
struct BranchSummary {
  std::vector<BState> ends;  // reachable ends
  bool all_paths_end = true;  // no reachable stuck node and no reachable cycle
};

class AdaptationGraphs {
public:
  explicit AdaptationGraphs(const SBSystem& sys) : sys_(sys) {}

  const BranchSummary& summary(std::size_t invariant, SState target, BState start) {
    auto key = std::make_tuple(invariant, target, start);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, compute(invariant, target, start)).first;
    }
    return it->second;
  }

private:
  BranchSummary compute(std::size_t invariant, SState target, BState start) const {
    const auto& succ = sys_.behaviour().successors;
    const Formula& inv = sys_.structure().invariants[invariant];
    BranchSummary out;

    // iterative DFS with colours: 0 unvisited, 1 on stack, 2 done
    std::vector<int> colour(sys_.bstate_count(), 0);
    std::vector<std::pair<BState, std::size_t>> stack{{start, 0}};
    colour[start] = 1;
    while (!stack.empty()) {
      auto& [q, next] = stack.back();
      if (sys_.in_region(q, target)) {
        out.ends.push_back(q);
        colour[q] = 2;
        stack.pop_back();
        continue;
      }
      if (next == 0) {
        bool moves = std::any_of(succ[q].begin(), succ[q].end(), [&](BState q2) { return sys_.satisfies(q2, inv); });
        if (!moves) {
          out.all_paths_end = false;  // stuck
        }
      }
      if (next < succ[q].size()) {
        BState q2 = succ[q][next++];
        if (!sys_.satisfies(q2, inv)) {
          continue;
        }
        if (colour[q2] == 1) {
          out.all_paths_end = false;  // cycle of adapting steps
        } else if (colour[q2] == 0) {
          colour[q2] = 1;
          stack.emplace_back(q2, 0);
        }
        continue;
      }
      colour[q] = 2;
      stack.pop_back();
    }
    std::sort(out.ends.begin(), out.ends.end());
    return out;
  }

  const SBSystem& sys_;
  std::map<std::tuple<std::size_t, SState, BState>, BranchSummary> cache_;
};

bool clause_holds(const SBSystem& sys, AdaptationGraphs& graphs, const AdaptRelation& rel, BState q, SState r,
                  StrongReading reading) {
  if (!sys.in_region(q, r)) {
    return false;
  }
  const auto& next = sys.behaviour().successors[q];
  const auto& st = sys.structure();
  const bool can_start = std::none_of(next.begin(), next.end(), [&](BState q2) { return sys.in_region(q2, r); });
  const auto outgoing = st.outgoing(r);

  for (BState q2 : next) {
    if (rel.contains(q2, r)) {
      continue;
    }
    if (!can_start) {
      return false;
    }
    bool any_started = false;
    bool any_good = false;
    bool all_good = true;
    for (const STransition& t : outgoing) {
      if (!sys.satisfies(q2, st.invariants[t.invariant])) {
        continue;  // AdaptStart needs q' ⊨ φ
      }
      any_started = true;
      const BranchSummary& b = graphs.summary(t.invariant, t.to, q2);
      bool good;
      if (rel.kind() == AdaptKind::weak) {
        good = std::any_of(b.ends.begin(), b.ends.end(), [&](BState e) { return rel.contains(e, t.to); });
      } else {
        good = b.all_paths_end &&
               std::all_of(b.ends.begin(), b.ends.end(), [&](BState e) { return rel.contains(e, t.to); });
      }
      any_good = any_good || good;
      all_good = all_good && good;
    }
    bool ok;
    if (rel.kind() == AdaptKind::strong && reading == StrongReading::all_branches) {
      ok = any_started && all_good;
    } else {
      ok = any_good;
    }
    if (!ok) {
      return false;
    }
  }
  return true;
}

AdaptRelation refine_with(const SBSystem& sys, AdaptationGraphs& graphs, const AdaptRelation& candidate,
                          StrongReading reading) {
  AdaptRelation next = candidate;
  for (auto [q, r] : candidate.pairs()) {
    if (!clause_holds(sys, graphs, candidate, q, r, reading)) {
      next.set(q, r, false);
    }
  }
  return next;
}

AdaptRelation greatest_fixpoint(const SBSystem& sys, AdaptKind kind, StrongReading reading) {
  AdaptationGraphs graphs(sys);
  AdaptRelation current = initial_candidate(sys, kind);
  while (true) {
    AdaptRelation next = refine_with(sys, graphs, current, reading);
    if (next == current) {
      return current;
    }
    current = std::move(next);
  }
}

} // namespace

AdaptRelation initial_candidate(const SBSystem& sys, AdaptKind kind) {
  AdaptRelation rel(kind, sys.bstate_count(), sys.sstate_count());
  for (BState q = 0; q < sys.bstate_count(); ++q) {
    for (SState r = 0; r < sys.sstate_count(); ++r) {
      rel.set(q, r, sys.in_region(q, r));
    }
  }
  return rel;
}

AdaptRelation refine(const SBSystem& sys, const AdaptRelation& candidate, StrongReading reading) {
  AdaptationGraphs graphs(sys);
  return refine_with(sys, graphs, candidate, reading);
}

AdaptRelation weak_relation(const SBSystem& sys) {
  return greatest_fixpoint(sys, AdaptKind::weak, StrongReading::all_branches);
}

AdaptRelation strong_relation(const SBSystem& sys, StrongReading reading) {
  return greatest_fixpoint(sys, AdaptKind::strong, reading);
}

bool is_weak_adaptable(const SBSystem& sys) {
  return weak_relation(sys).contains(sys.behaviour().init, sys.structure().init);
}

bool is_strong_adaptable(const SBSystem& sys, StrongReading reading) {
  return strong_relation(sys, reading).contains(sys.behaviour().init, sys.structure().init);
}

std::size_t EquivPartition::block_of(BState q) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), q)) {
      return i;
    }
  }
  return blocks.size();
}

EquivPartition partition_of(const AdaptRelation& rel) {
  EquivPartition part{rel.kind(), {}};
  std::map<std::vector<bool>, std::size_t> by_row;
  for (BState q = 0; q < rel.bstate_count(); ++q) {
    std::vector<bool> row(rel.sstate_count());
    for (SState r = 0; r < rel.sstate_count(); ++r) {
      row[r] = rel.contains(q, r);
    }
    auto [it, fresh] = by_row.emplace(std::move(row), part.blocks.size());
    if (fresh) {
      part.blocks.emplace_back();
    }
    part.blocks[it->second].push_back(q);
  }
  return part;
}

EquivPartition equiv_partition(const SBSystem& sys, AdaptKind kind, StrongReading reading) {
  return partition_of(kind == AdaptKind::weak ? weak_relation(sys) : strong_relation(sys, reading));
}

std::string relation_json(const AdaptRelation& rel, const SBSystem& sys) {
  nlohmann::ordered_json doc;
  doc["kind"] = std::string(to_string(rel.kind()));
  doc["pairs"] = nlohmann::ordered_json::array();
  for (auto [q, r] : rel.pairs()) {
    doc["pairs"].push_back({sys.bstate_name(q), sys.sstate_name(r)});
  }
  return doc.dump();
}

} // namespace sbcheck
