#include "sbcheck/ctl.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>

namespace sbcheck {

using K = CtlFormula::Kind;

Kripke totalize(std::vector<std::vector<std::size_t>> successors, std::size_t init,
                std::function<StateSet(const CtlFormula&)> atoms) {
  for (std::size_t s = 0; s < successors.size(); ++s) {
    auto& out = successors[s];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) {
      out.push_back(s);
    }
  }
  return Kripke{std::move(successors), init, std::move(atoms)};
}

Kripke kripke_of(const FlatLTS& lts, const SBSystem& sys) {
  auto system = std::make_shared<const SBSystem>(sys);
  auto states = std::make_shared<const std::vector<FlatState>>(lts.states);
  auto classes = std::make_shared<const std::vector<StateClass>>(lts.classes);

  auto atoms = [system, states, classes](const CtlFormula& atom) {
    const std::size_t n = states->size();
    StateSet out(n, false);
    switch (atom.kind()) {
    case K::adapting:
    case K::steady: {
      StateClass want = atom.kind() == K::adapting ? StateClass::adapting : StateClass::steady;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = (*classes)[i] == want;
      }
      break;
    }
    case K::in_state: {
      auto r = system->find_sstate(atom.text());
      if (!r) {
        throw ModelError("unknown S-state '" + atom.text() + "' in in(...)");
      }
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = (*states)[i].r == *r;
      }
      break;
    }
    case K::predicate: {
      Formula phi = parse_formula(atom.text(), system->observables());
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = system->satisfies((*states)[i].q, phi);
      }
      break;
    }
    default:
      throw Error("not an atomic proposition: " + to_string(atom));
    }
    return out;
  };
  return totalize(lts.successor_lists(), lts.init, std::move(atoms));
}

void validate_atoms(const CtlFormula& f, const SBSystem& sys) {
  switch (f.kind()) {
  case K::in_state:
    if (!sys.find_sstate(f.text())) {
      throw ModelError("unknown S-state '" + f.text() + "' in in(...)");
    }
    return;
  case K::predicate:
    (void)parse_formula(f.text(), sys.observables());
    return;
  default:
    break;
  }
  if (f.is_unary()) {
    validate_atoms(f.left(), sys);
  } else if (f.is_binary()) {
    validate_atoms(f.left(), sys);
    validate_atoms(f.right(), sys);
  }
}

namespace {

StateSet complement(StateSet s) {
  s.flip();
  return s;
}

StateSet intersect(StateSet a, const StateSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = a[i] && b[i];
  }
  return a;
}

StateSet unite(StateSet a, const StateSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = a[i] || b[i];
  }
  return a;
}

class Labeler {
public:
  explicit Labeler(const Kripke& k) : k_(k), pred_(k.size()) {
    for (std::size_t s = 0; s < k.size(); ++s) {
      for (std::size_t t : k.successors[s]) {
        pred_[t].push_back(s);
      }
    }
  }

  const StateSet& sat(const CtlFormula& f) {
    std::string key = to_string(f);
    auto it = memo_.find(key);
    if (it == memo_.end()) {
      it = memo_.emplace(std::move(key), compute(f)).first;
    }
    return it->second;
  }

  // Explanation of why `f` has truth value `want` at `s`, as a path from s.
  std::optional<Trace> explain(const CtlFormula& f, std::size_t s, bool want) {
    switch (f.kind()) {
    case K::negation:
      return explain(f.left(), s, !want);
    case K::conjunction:
    case K::disjunction:
      for (const CtlFormula* side : {&f.left(), &f.right()}) {
        if (sat(*side)[s] == want) {
          if (auto t = explain(*side, s, want)) return t;
        }
      }
      return std::nullopt;
    case K::implication:
      if (!want) {
        return explain(f.right(), s, false);
      }
      if (!sat(f.left())[s]) {
        return explain(f.left(), s, false);
      }
      return explain(f.right(), s, true);
    default:
      break;
    }

    const StateSet all(k_.size(), true);
    if (want) {
      switch (f.kind()) {
      case K::ex:
        for (std::size_t t : k_.successors[s]) {
          if (sat(f.left())[t]) return extend({{s, t}, std::nullopt}, f.left(), true);
        }
        return std::nullopt;
      case K::ef:
        return path_to(s, all, sat(f.left()), f.left(), true);
      case K::eu:
        return path_to(s, sat(f.left()), sat(f.right()), f.right(), true);
      case K::eg:
        return lasso(s, sat(f));
      default:
        return std::nullopt;
      }
    }
    switch (f.kind()) {
    case K::ax:
      for (std::size_t t : k_.successors[s]) {
        if (!sat(f.left())[t]) return extend({{s, t}, std::nullopt}, f.left(), false);
      }
      return std::nullopt;
    case K::ag:
      return path_to(s, all, complement(sat(f.left())), f.left(), false);
    case K::af:
      return lasso(s, complement(sat(f)));
    case K::au: {
      StateSet not_g = complement(sat(f.right()));
      StateSet bad = intersect(not_g, complement(sat(f.left())));
      if (auto t = path_to(s, not_g, bad, f.left(), false)) {
        return t;
      }
      return lasso(s, intersect(not_g, complement(sat(f))));
    }
    default:
      return std::nullopt;
    }
  }

private:
  StateSet compute(const CtlFormula& f) {
    const std::size_t n = k_.size();
    switch (f.kind()) {
    case K::constant:
      return StateSet(n, f.constant_value());
    case K::adapting:
    case K::steady:
    case K::in_state:
    case K::predicate:
      return k_.atoms(f);
    case K::negation:
      return complement(sat(f.left()));
    case K::conjunction:
      return intersect(sat(f.left()), sat(f.right()));
    case K::disjunction:
      return unite(sat(f.left()), sat(f.right()));
    case K::implication:
      return unite(complement(sat(f.left())), sat(f.right()));
    case K::ex:
      return ex(sat(f.left()));
    case K::ef:
      return eu(StateSet(n, true), sat(f.left()));
    case K::eu:
      return eu(sat(f.left()), sat(f.right()));
    case K::eg:
      return eg(sat(f.left()));
    case K::ax:
      return complement(ex(complement(sat(f.left()))));
    case K::af:
      return complement(eg(complement(sat(f.left()))));
    case K::ag:
      return complement(eu(StateSet(n, true), complement(sat(f.left()))));
    case K::au: {
      StateSet not_f = complement(sat(f.left()));
      StateSet not_g = complement(sat(f.right()));
      StateSet stop = eu(not_g, intersect(not_f, not_g));
      return intersect(complement(stop), complement(eg(not_g)));
    }
    }
    return StateSet(n, false);
  }

  StateSet ex(const StateSet& target) const {
    StateSet out(k_.size(), false);
    for (std::size_t t = 0; t < k_.size(); ++t) {
      if (target[t]) {
        for (std::size_t s : pred_[t]) out[s] = true;
      }
    }
    return out;
  }

  StateSet eu(const StateSet& through, const StateSet& goal) const {
    StateSet out = goal;
    std::deque<std::size_t> work;
    for (std::size_t s = 0; s < k_.size(); ++s) {
      if (goal[s]) work.push_back(s);
    }
    while (!work.empty()) {
      std::size_t t = work.front();
      work.pop_front();
      for (std::size_t s : pred_[t]) {
        if (!out[s] && through[s]) {
          out[s] = true;
          work.push_back(s);
        }
      }
    }
    return out;
  }

  // Greatest fixpoint: drop states of `f` whose successors inside the
  // current set have all been dropped.
  StateSet eg(const StateSet& f) const {
    StateSet out = f;
    std::vector<std::size_t> live(k_.size(), 0);
    std::vector<std::size_t> work;
    for (std::size_t s = 0; s < k_.size(); ++s) {
      if (!out[s]) continue;
      for (std::size_t t : k_.successors[s]) {
        if (out[t]) ++live[s];
      }
      if (live[s] == 0) work.push_back(s);
    }
    while (!work.empty()) {
      std::size_t t = work.back();
      work.pop_back();
      if (!out[t]) continue;
      out[t] = false;
      for (std::size_t s : pred_[t]) {
        if (out[s] && --live[s] == 0) work.push_back(s);
      }
    }
    return out;
  }

  // Shortest path from s through `through` states to a `goal` state, then
  // the explanation of `sub` (with value `want`) at the goal appended.
  std::optional<Trace> path_to(std::size_t s, const StateSet& through, const StateSet& goal, const CtlFormula& sub,
                               bool want) {
    std::vector<std::size_t> parent(k_.size(), k_.size());
    std::deque<std::size_t> work{s};
    parent[s] = s;
    while (!work.empty()) {
      std::size_t u = work.front();
      work.pop_front();
      if (goal[u]) {
        Trace t;
        for (std::size_t v = u;; v = parent[v]) {
          t.states.push_back(v);
          if (v == s) break;
        }
        std::reverse(t.states.begin(), t.states.end());
        return extend(std::move(t), sub, want);
      }
      if (!through[u]) continue;
      for (std::size_t v : k_.successors[u]) {
        if (parent[v] == k_.size()) {
          parent[v] = u;
          work.push_back(v);
        }
      }
    }
    return std::nullopt;
  }

  // Infinite path from s staying inside `inside`, as a lasso.
  std::optional<Trace> lasso(std::size_t s, const StateSet& inside) const {
    if (!inside[s]) {
      return std::nullopt;
    }
    Trace t;
    std::vector<std::size_t> seen_at(k_.size(), k_.size());
    std::size_t u = s;
    while (seen_at[u] == k_.size()) {
      seen_at[u] = t.states.size();
      t.states.push_back(u);
      auto it = std::find_if(k_.successors[u].begin(), k_.successors[u].end(),
                             [&](std::size_t v) { return inside[v]; });
      if (it == k_.successors[u].end()) {
        return std::nullopt;  // not a fixpoint of EG; cannot happen for sat sets
      }
      u = *it;
    }
    t.loop_start = seen_at[u];
    return t;
  }

  std::optional<Trace> extend(Trace prefix, const CtlFormula& sub, bool want) {
    std::size_t last = prefix.states.back();
    auto tail = explain(sub, last, want);
    if (!tail || (tail->states.size() <= 1 && !tail->loop_start)) {
      return prefix;
    }
    const std::size_t offset = prefix.states.size() - 1;
    prefix.states.insert(prefix.states.end(), tail->states.begin() + 1, tail->states.end());
    if (tail->loop_start) {
      prefix.loop_start = *tail->loop_start + offset;
    }
    return prefix;
  }

  const Kripke& k_;
  std::vector<std::vector<std::size_t>> pred_;
  std::map<std::string, StateSet> memo_;
};

} // namespace

CheckResult check_ctl(const Kripke& k, const CtlFormula& f) {
  Labeler labeler(k);
  CheckResult res;
  res.satisfying = labeler.sat(f);
  res.holds_at_init = k.size() > 0 && res.satisfying[k.init];
  if (k.size() > 0) {
    res.trace = labeler.explain(f, k.init, res.holds_at_init);
  }
  return res;
}

CheckResult check_ctl(const FlatLTS& lts, const SBSystem& sys, const CtlFormula& f) {
  validate_atoms(f, sys);
  return check_ctl(kripke_of(lts, sys), f);
}

bool weak_adaptable_ctl(const FlatLTS& lts, const SBSystem& sys) {
  return check_ctl(lts, sys, weak_adaptability_formula()).holds_at_init;
}

bool strong_adaptable_ctl(const FlatLTS& lts, const SBSystem& sys) {
  return check_ctl(lts, sys, strong_adaptability_formula()).holds_at_init;
}

} // namespace sbcheck
