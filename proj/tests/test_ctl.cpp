#include "fixtures.hpp"
#include "random_kripke.hpp"
#include "random_system.hpp"

#include "sbcheck/adapt.hpp"
#include "sbcheck/ctl.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sbcheck;
using namespace sbtest;
using K = CtlFormula::Kind;

namespace {

CtlFormula neg(CtlFormula f) { return CtlFormula::unary(K::negation, std::move(f)); }
CtlFormula un(K k, CtlFormula f) { return CtlFormula::unary(k, std::move(f)); }
CtlFormula bin(K k, CtlFormula a, CtlFormula b) { return CtlFormula::binary(k, std::move(a), std::move(b)); }

StateSet sat(const Kripke& k, const CtlFormula& f) { return check_ctl(k, f).satisfying; }

bool is_edge(const Kripke& k, std::size_t a, std::size_t b) {
  const auto& s = k.successors[a];
  return std::find(s.begin(), s.end(), b) != s.end();
}

void check_trace_shape(const Kripke& k, const Trace& t) {
  REQUIRE_FALSE(t.states.empty());
  CHECK(t.states.front() == k.init);
  for (std::size_t i = 1; i < t.states.size(); ++i) CHECK(is_edge(k, t.states[i - 1], t.states[i]));
  if (t.loop_start) {
    REQUIRE(*t.loop_start < t.states.size());
    CHECK(is_edge(k, t.states.back(), t.states[*t.loop_start]));
  }
}

} // namespace

TEST_CASE("parse and print") {
  CHECK(parse_ctl("AG(adapting -> AF steady)") == strong_adaptability_formula());
  CHECK(parse_ctl("EG(adapting -> EF steady)") == weak_adaptability_formula());
  CHECK(to_string(strong_adaptability_formula()) == "AG(adapting -> AF steady)");
  CHECK(to_string(weak_adaptability_formula()) == "EG(adapting -> EF steady)");

  CtlFormula au = parse_ctl("A[true U steady]");
  CHECK(au.kind() == K::au);
  CHECK(au == bin(K::au, CtlFormula::constant(true), CtlFormula::steady()));

  CHECK(parse_ctl("!AX adapting && EF in(r1) || @(p == 1 && (eat)) -> false") ==
        bin(K::implication,
            bin(K::disjunction, bin(K::conjunction, neg(un(K::ax, CtlFormula::adapting())), un(K::ef, CtlFormula::in_state("r1"))),
                CtlFormula::predicate("p == 1 && (eat)")),
            CtlFormula::constant(false)));
  CHECK(to_string(parse_ctl("E[ !steady U (adapting && in(r0)) ]")) == "E[!steady U adapting && in(r0)]");
  CHECK(depth(strong_adaptability_formula()) == 3);

  try {
    parse_ctl("AG (adapting ->");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position().column == 16);
  }
  CHECK_THROWS_AS(parse_ctl(""), ParseError);
  CHECK_THROWS_AS(parse_ctl("A[steady adapting]"), ParseError);
  CHECK_THROWS_AS(parse_ctl("@(x"), ParseError);
  CHECK_THROWS_AS(parse_ctl("@( )"), ParseError);
  CHECK_THROWS_AS(parse_ctl("in(1)"), ParseError);
  CHECK_THROWS_AS(parse_ctl("steady steady"), ParseError);
}

TEST_CASE("property: print then parse round-trips") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 1000; ++i) {
    CtlFormula f = random_ctl(rng, 5);
    INFO(to_string(f));
    REQUIRE(parse_ctl(to_string(f)) == f);
  }
}

TEST_CASE("adaptability formulas on the predator models") {
  const SBSystem& s0 = predator_s0();
  const SBSystem& s1 = predator_s1();
  FlatLTS f0 = flatten(s0), f1 = flatten(s1);
  CHECK(weak_adaptable_ctl(f0, s0));
  CHECK_FALSE(strong_adaptable_ctl(f0, s0));
  CHECK(weak_adaptable_ctl(f1, s1));
  CHECK(strong_adaptable_ctl(f1, s1));

  // agreement with the relational characterization
  CHECK(weak_adaptable_ctl(f0, s0) == is_weak_adaptable(s0));
  CHECK(strong_adaptable_ctl(f0, s0) == is_strong_adaptable(s0));
  CHECK(weak_adaptable_ctl(f1, s1) == is_weak_adaptable(s1));
  CHECK(strong_adaptable_ctl(f1, s1) == is_strong_adaptable(s1));
}

TEST_CASE("S0 strong counterexample enters a stuck adaptation") {
  const SBSystem& sys = predator_s0();
  FlatLTS lts = flatten(sys);
  CheckResult res = check_ctl(lts, sys, strong_adaptability_formula());
  REQUIRE_FALSE(res.holds_at_init);
  REQUIRE(res.trace);
  check_trace_shape(kripke_of(lts, sys), *res.trace);
  REQUIRE(res.trace->loop_start);
  bool stuck = false;
  for (std::size_t s : res.trace->states) stuck = stuck || lts.classes[s] == StateClass::stuck;
  CHECK(stuck);
  for (std::size_t i = *res.trace->loop_start; i < res.trace->states.size(); ++i) {
    CHECK(lts.classes[res.trace->states[i]] != StateClass::steady);
  }
}

TEST_CASE("trivial formulas") {
  const SBSystem& sys = predator_s0();
  FlatLTS lts = flatten(sys);
  CheckResult all = check_ctl(lts, sys, parse_ctl("AG true"));
  CHECK(std::all_of(all.satisfying.begin(), all.satisfying.end(), [](bool b) { return b; }));
  CHECK(all.holds_at_init);
  StateSet none = check_ctl(lts, sys, parse_ctl("EX false")).satisfying;
  CHECK(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
  CHECK(ctl_oracle(kripke_of(lts, sys), parse_ctl("EX false")) == none);

  SBSystem one = SystemBuilder()
                     .observable("x", Domain::boolean())
                     .bstate("q0", {{"x", true}}, true)
                     .sstate("r0", "x", true)
                     .build();
  FlatLTS l1 = flatten(one);
  CHECK(weak_adaptable_ctl(l1, one));
  CHECK(strong_adaptable_ctl(l1, one));
}

TEST_CASE("atoms") {
  const SBSystem& sys = predator_s0();
  FlatLTS lts = flatten(sys);
  StateSet moved = check_ctl(lts, sys, parse_ctl("@(moved)")).satisfying;
  StateSet in_r2 = check_ctl(lts, sys, parse_ctl("in(r2)")).satisfying;
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    CHECK(moved[i] == (sys.bstate_name(lts.states[i].q) == "migrated"));
    CHECK(in_r2[i] == (lts.states[i].r == sstate(sys, "r2")));
  }
  StateSet adapting = check_ctl(lts, sys, parse_ctl("adapting")).satisfying;
  StateSet steady = check_ctl(lts, sys, parse_ctl("steady")).satisfying;
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    if (lts.classes[i] == StateClass::stuck) {
      CHECK_FALSE(adapting[i]);
      CHECK_FALSE(steady[i]);
    }
  }
  CHECK_THROWS_AS(check_ctl(lts, sys, parse_ctl("EF in(r9)")), ModelError);
  CHECK_THROWS_AS(check_ctl(lts, sys, parse_ctl("AG @(zz > 1)")), ParseError);
  CHECK_THROWS_AS(check_ctl(lts, sys, parse_ctl("AG @(eat > 1)")), ParseError);
}

TEST_CASE("oracle agrees on EF steady over S1") {
  const SBSystem& sys = predator_s1();
  FlatLTS lts = flatten(sys);
  Kripke k = kripke_of(lts, sys);
  CtlFormula f = parse_ctl("EF steady");
  CHECK(ctl_oracle(k, f) == sat(k, f));
}

TEST_CASE("property: checker equals oracle, dualities and expansion laws") {
  std::mt19937_64 rng(52);
  for (int iter = 0; iter < 300; ++iter) {
    Kripke k = random_kripke(rng);
    CtlFormula f = random_ctl(rng, 4);
    CtlFormula g = random_ctl(rng, 3);
    INFO(to_string(f));
    CheckResult res = check_ctl(k, f);
    REQUIRE(res.satisfying == ctl_oracle(k, f));
    CHECK(res.holds_at_init == res.satisfying[k.init]);
    if (res.trace) check_trace_shape(k, *res.trace);

    CHECK(sat(k, un(K::af, f)) == sat(k, neg(un(K::eg, neg(f)))));
    CHECK(sat(k, un(K::ag, f)) == sat(k, neg(un(K::ef, neg(f)))));
    CHECK(sat(k, un(K::ax, f)) == sat(k, neg(un(K::ex, neg(f)))));
    CHECK(sat(k, bin(K::au, f, g)) ==
          sat(k, bin(K::conjunction, neg(bin(K::eu, neg(g), bin(K::conjunction, neg(f), neg(g)))), neg(un(K::eg, neg(g))))));
    CtlFormula eu = bin(K::eu, f, g);
    CHECK(sat(k, eu) == sat(k, bin(K::disjunction, g, bin(K::conjunction, f, un(K::ex, eu)))));
    CtlFormula eg = un(K::eg, f);
    CHECK(sat(k, eg) == sat(k, bin(K::conjunction, f, un(K::ex, eg))));
    CHECK(sat(k, bin(K::au, CtlFormula::constant(true), g)) == sat(k, un(K::af, g)));
  }
}

TEST_CASE("property: witnesses on flat systems are paths of the flat graph") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 200; ++iter) {
    SBSystem sys = random_system(rng);
    FlatLTS lts = flatten(sys);
    Kripke k = kripke_of(lts, sys);
    for (const CtlFormula* f : {&weak_adaptability_formula(), &strong_adaptability_formula()}) {
      CheckResult res = check_ctl(k, *f);
      CHECK(res.satisfying == ctl_oracle(k, *f));
      if (res.trace) check_trace_shape(k, *res.trace);
      if (f == &weak_adaptability_formula()) CHECK(res.trace.has_value() == res.holds_at_init);
      if (f == &strong_adaptability_formula()) CHECK(res.trace.has_value() == !res.holds_at_init);
    }
  }
}
