#include "sbcheck/ctl.hpp"

// Reference semantics for testing the labeling checker. Every operator is
// computed from its own fixpoint equation; nothing is rewritten through a
// duality.

namespace sbcheck {

namespace {

using K = CtlFormula::Kind;

struct Naive {
  const Kripke& k;

  bool some_succ(std::size_t s, const StateSet& z) const {
    for (std::size_t t : k.successors[s]) {
      if (z[t]) return true;
    }
    return false;
  }

  bool all_succ(std::size_t s, const StateSet& z) const {
    for (std::size_t t : k.successors[s]) {
      if (!z[t]) return false;
    }
    return true;
  }

  // Iterates z := step(z) from `start` until nothing changes.
  template <class Step>
  StateSet iterate(StateSet z, Step step) const {
    while (true) {
      StateSet next(k.size(), false);
      for (std::size_t s = 0; s < k.size(); ++s) {
        next[s] = step(s, z);
      }
      if (next == z) return z;
      z = std::move(next);
    }
  }

  StateSet eval(const CtlFormula& f) const {
    const std::size_t n = k.size();
    StateSet none(n, false), all(n, true);
    switch (f.kind()) {
    case K::constant:
      return f.constant_value() ? all : none;
    case K::adapting:
    case K::steady:
    case K::in_state:
    case K::predicate:
      return k.atoms(f);
    default:
      break;
    }

    StateSet a = eval(f.left());
    StateSet b = f.is_binary() ? eval(f.right()) : StateSet{};
    StateSet out(n, false);
    switch (f.kind()) {
    case K::negation:
      for (std::size_t s = 0; s < n; ++s) out[s] = !a[s];
      return out;
    case K::conjunction:
      for (std::size_t s = 0; s < n; ++s) out[s] = a[s] && b[s];
      return out;
    case K::disjunction:
      for (std::size_t s = 0; s < n; ++s) out[s] = a[s] || b[s];
      return out;
    case K::implication:
      for (std::size_t s = 0; s < n; ++s) out[s] = !a[s] || b[s];
      return out;
    case K::ex:
      for (std::size_t s = 0; s < n; ++s) out[s] = some_succ(s, a);
      return out;
    case K::ax:
      for (std::size_t s = 0; s < n; ++s) out[s] = all_succ(s, a);
      return out;
    case K::ef:
      return iterate(none, [&](std::size_t s, const StateSet& z) { return a[s] || some_succ(s, z); });
    case K::af:
      return iterate(none, [&](std::size_t s, const StateSet& z) { return a[s] || all_succ(s, z); });
    case K::eg:
      return iterate(all, [&](std::size_t s, const StateSet& z) { return a[s] && some_succ(s, z); });
    case K::ag:
      return iterate(all, [&](std::size_t s, const StateSet& z) { return a[s] && all_succ(s, z); });
    case K::eu:
      return iterate(none, [&](std::size_t s, const StateSet& z) { return b[s] || (a[s] && some_succ(s, z)); });
    case K::au:
      return iterate(none, [&](std::size_t s, const StateSet& z) { return b[s] || (a[s] && all_succ(s, z)); });
    default:
      return out;
    }
  }
};

} // namespace

StateSet ctl_oracle(const Kripke& k, const CtlFormula& f) { return Naive{k}.eval(f); }

} // namespace sbcheck
