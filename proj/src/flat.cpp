#include "sbcheck/flat.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sbcheck {

FlatLabel FlatTransition::label() const {
  switch (rule) {
  case Rule::steady:
    return {false, from.r, std::nullopt};
  case Rule::adapt_start:
    return {true, from.r, to.pending};
  case Rule::adapt:
  case Rule::adapt_end:
    return {true, from.r, from.pending};
  }
  return {};
}

std::string_view to_string(Rule rule) {
  switch (rule) {
  case Rule::steady: return "Steady";
  case Rule::adapt_start: return "AdaptStart";
  case Rule::adapt: return "Adapt";
  case Rule::adapt_end: return "AdaptEnd";
  }
  return "?";
}

std::string_view to_string(StateClass c) {
  switch (c) {
  case StateClass::steady: return "steady";
  case StateClass::adapting: return "adapting";
  case StateClass::stuck: return "stuck";
  }
  return "?";
}

std::vector<FlatTransition> successors(const SBSystem& sys, const FlatState& s) {
  std::vector<FlatTransition> out;
  const auto& next = sys.behaviour().successors[s.q];
  const auto& st = sys.structure();

  if (!s.pending) {
    bool steady_move = false;
    for (BState q2 : next) {
      if (sys.in_region(q2, s.r)) {
        out.push_back({s, {q2, s.r, std::nullopt}, Rule::steady});
        steady_move = true;
      }
    }
    if (!steady_move) {
      for (const STransition& t : st.outgoing(s.r)) {
        for (BState q2 : next) {
          if (sys.satisfies(q2, st.invariants[t.invariant])) {
            out.push_back({s, {q2, s.r, Pending{t.invariant, t.to}}, Rule::adapt_start});
          }
        }
      }
    }
  } else {
    const Pending& p = *s.pending;
    if (sys.in_region(s.q, p.target)) {
      out.push_back({s, {s.q, p.target, std::nullopt}, Rule::adapt_end});
    } else {
      for (BState q2 : next) {
        if (sys.satisfies(q2, st.invariants[p.invariant])) {
          out.push_back({s, {q2, s.r, p}, Rule::adapt});
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const FlatTransition& a, const FlatTransition& b) { return a.to < b.to; });
  return out;
}

namespace {

StateClass class_of(const FlatState& s, const std::vector<FlatTransition>& out) {
  bool adapting = std::any_of(out.begin(), out.end(), [](const FlatTransition& t) { return t.rule != Rule::steady; });
  if (adapting) {
    return StateClass::adapting;
  }
  if (!s.pending) {
    return StateClass::steady;
  }
  return StateClass::stuck;
}

} // namespace

StateClass classify(const SBSystem& sys, const FlatState& s) { return class_of(s, successors(sys, s)); }

std::optional<std::size_t> FlatLTS::find(const FlatState& s) const {
  auto it = std::find(states.begin(), states.end(), s);
  if (it == states.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states.begin());
}

std::vector<std::vector<std::size_t>> FlatLTS::successor_lists() const {
  std::vector<std::vector<std::size_t>> succ(states.size());
  for (const Edge& e : transitions) {
    succ[e.from].push_back(e.to);
  }
  return succ;
}

FlatLTS flatten(const SBSystem& sys) {
  FlatLTS lts;
  std::map<FlatState, std::size_t> index;
  std::deque<std::size_t> work;

  auto intern = [&](const FlatState& s) {
    auto [it, fresh] = index.emplace(s, lts.states.size());
    if (fresh) {
      lts.states.push_back(s);
      lts.classes.push_back(StateClass::steady);
      work.push_back(it->second);
    }
    return it->second;
  };

  lts.init = intern({sys.behaviour().init, sys.structure().init, std::nullopt});
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    FlatState s = lts.states[i];
    auto out = successors(sys, s);
    lts.classes[i] = class_of(s, out);
    for (const FlatTransition& t : out) {
      lts.transitions.push_back({i, intern(t.to), t.rule});
    }
  }
  std::sort(lts.transitions.begin(), lts.transitions.end());
  return lts;
}

std::string format_state(const FlatState& s, const SBSystem& sys) {
  std::string out = "(" + sys.bstate_name(s.q) + ", " + sys.sstate_name(s.r) + ", ";
  if (s.pending) {
    out += "{(" + to_string(sys.structure().invariants[s.pending->invariant]) + ", " +
           sys.sstate_name(s.pending->target) + ")}";
  } else {
    out += "-";
  }
  return out + ")";
}

} // namespace sbcheck
