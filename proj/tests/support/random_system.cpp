#include "random_system.hpp"

namespace sbtest {

using namespace sbcheck;

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

} // namespace

Formula random_formula(Rng& rng, std::size_t observables, int depth) {
  if (depth <= 0 || coin(rng, 0.35)) {
    if (coin(rng, 0.12)) {
      return Formula::constant(coin(rng, 0.5));
    }
    std::size_t v = pick(rng, observables);
    Formula atom = Formula::variable(v, "x" + std::to_string(v));
    return coin(rng, 0.4) ? Formula::negation(atom) : atom;
  }
  switch (pick(rng, 4)) {
  case 0:
    return Formula::negation(random_formula(rng, observables, depth - 1));
  case 1:
    return Formula::conjunction(random_formula(rng, observables, depth - 1), random_formula(rng, observables, depth - 1));
  case 2:
    return Formula::disjunction(random_formula(rng, observables, depth - 1), random_formula(rng, observables, depth - 1));
  default:
    return Formula::implication(random_formula(rng, observables, depth - 1), random_formula(rng, observables, depth - 1));
  }
}

SBSystem random_system(Rng& rng, const Shape& shape) {
  while (true) {
    const std::size_t nobs = 1 + pick(rng, shape.max_observables);
    const std::size_t nq = 1 + pick(rng, shape.max_bstates);
    const std::size_t nr = 1 + pick(rng, shape.max_sstates);

    SystemBuilder b;
    b.name("random");
    for (std::size_t i = 0; i < nobs; ++i) {
      b.observable("x" + std::to_string(i), Domain::boolean());
    }
    const std::size_t q0 = pick(rng, nq);
    for (std::size_t q = 0; q < nq; ++q) {
      std::vector<std::pair<std::string, Literal>> bindings;
      for (std::size_t i = 0; i < nobs; ++i) {
        bindings.emplace_back("x" + std::to_string(i), coin(rng, 0.5));
      }
      b.bstate("q" + std::to_string(q), bindings, q == q0);
    }
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t t = 0; t < nq; ++t) {
        if (coin(rng, shape.bedge)) {
          b.btransition("q" + std::to_string(q), "q" + std::to_string(t));
        }
      }
    }
    for (std::size_t r = 0; r < nr; ++r) {
      b.sstate("r" + std::to_string(r), random_formula(rng, nobs, 2), r == 0);
    }
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t t = 0; t < nr; ++t) {
        if (coin(rng, shape.sedge)) {
          b.stransition("r" + std::to_string(r), random_formula(rng, nobs, 1), "r" + std::to_string(t));
        }
      }
    }
    SBSystem sys = b.build();
    if (check_well_formed(sys).ok()) {
      return sys;
    }
  }
}

SBSystem restrict_system(const SBSystem& sys, const std::vector<bool>& keep_b, const std::vector<bool>& keep_s) {
  SystemBuilder b;
  b.name(sys.name());
  for (const auto& d : sys.observables()) {
    b.observable(d.name, d.domain);
  }
  const auto& beh = sys.behaviour();
  for (BState q = 0; q < sys.bstate_count(); ++q) {
    if (!keep_b[q]) continue;
    std::vector<std::pair<std::string, Literal>> bindings;
    const Valuation& v = sys.observation().table[q];
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Domain& d = sys.observables()[i].domain;
      Literal lit;
      switch (d.kind()) {
      case Domain::Kind::boolean: lit = v[i] != 0; break;
      case Domain::Kind::integer: lit = v[i]; break;
      case Domain::Kind::enumeration: lit = d.format_value(v[i]); break;
      }
      bindings.emplace_back(sys.observables()[i].name, lit);
    }
    b.bstate(beh.states[q], bindings, q == beh.init);
  }
  for (BState q = 0; q < sys.bstate_count(); ++q) {
    for (BState t : beh.successors[q]) {
      if (keep_b[q] && keep_b[t]) b.btransition(beh.states[q], beh.states[t]);
    }
  }
  const auto& st = sys.structure();
  for (SState r = 0; r < sys.sstate_count(); ++r) {
    if (keep_s[r]) b.sstate(st.states[r], st.labels[r], r == st.init);
  }
  for (const auto& t : st.transitions) {
    if (keep_s[t.from] && keep_s[t.to]) b.stransition(st.states[t.from], st.invariants[t.invariant], st.states[t.to]);
  }
  return b.build();
}

} // namespace sbtest
