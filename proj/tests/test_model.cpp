#include "fixtures.hpp"
#include "random_system.hpp"

#include "sbcheck/model.hpp"

#include <doctest.h>

using namespace sbcheck;
using namespace sbtest;

namespace {

SBSystem two_twins() {
  return SystemBuilder()
      .name("twins")
      .observable("x", Domain::boolean())
      .bstate("a", {{"x", true}}, true)
      .bstate("b", {{"x", true}})
      .btransition("a", "b")
      .sstate("r", "x", true)
      .build();
}

} // namespace

TEST_CASE("observe") {
  const SBSystem& sys = predator_s0();
  const Valuation& v0 = observe(sys, sys.behaviour().init);
  CHECK(format_valuation(v0, sys.observables()) == "(p=0, a0=1, a1=1, eat=true, moved=false)");
  CHECK(sys.bstate_name(sys.behaviour().init) == "p0_a11_fed");

  SBSystem twins = two_twins();
  CHECK(observe(twins, "a") == observe(twins, "b"));

  CHECK_THROWS_AS(observe(sys, "nowhere"), ModelError);
  CHECK_THROWS_AS(observe(sys, BState{999}), ModelError);

  for (BState q = 0; q < sys.bstate_count(); ++q) {
    const Valuation& v = observe(sys, q);
    REQUIRE(v.size() == sys.observables().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(sys.observables()[i].domain.contains(v[i]));
    }
  }
}

TEST_CASE("well-formedness of the bundled models") {
  CHECK(check_well_formed(predator_s0()).ok());
  CHECK(check_well_formed(predator_s1()).ok());
}

TEST_CASE("well-formedness: unsatisfiable label") {
  SBSystem bad = SystemBuilder(predator_s0()).relabel("r2", "moved && !moved").build();
  WellFormedness wf = check_well_formed(bad);
  REQUIRE(wf.violations.size() == 1);
  CHECK(wf.violations[0].kind == Violation::Kind::unsatisfiable_label);
  CHECK(bad.sstate_name(wf.violations[0].sstate) == "r2");
}

TEST_CASE("well-formedness: initial state outside the initial region") {
  // eat=false and a0=0 violate L(r0)
  SBSystem bad = SystemBuilder(predator_s0()).set_binit("p0_a01_hungry").build();
  const Valuation& v = observe(bad, bad.behaviour().init);
  REQUIRE_FALSE(evaluate(bad.structure().labels[bad.structure().init], v));
  WellFormedness wf = check_well_formed(bad);
  REQUIRE(wf.violations.size() == 1);
  CHECK(wf.violations[0].kind == Violation::Kind::initial_state_outside_region);
  CHECK(bad.sstate_name(wf.violations[0].sstate) == "r0");
}

TEST_CASE("constraint_region") {
  const SBSystem& sys = predator_s0();
  auto r2 = constraint_region(sys, sstate(sys, "r2"));
  REQUIRE(r2.size() == 1);
  CHECK(sys.bstate_name(r2[0]) == "migrated");

  SBSystem all = SystemBuilder(sys).relabel("r1", "true").build();
  CHECK(constraint_region(all, sstate(all, "r1")).size() == all.bstate_count());

  auto r0 = constraint_region(sys, sstate(sys, "r0"));
  std::vector<std::string> names;
  for (BState q : r0) names.push_back(sys.bstate_name(q));
  // p = 0, not moved, and not (hungry with prey 0 gone)
  CHECK(names == std::vector<std::string>{"p0_a00_fed", "p0_a01_fed", "p0_a10_fed", "p0_a10_hungry", "p0_a11_fed",
                                          "p0_a11_hungry"});

  CHECK_THROWS_AS(constraint_region(sys, SState{7}), ModelError);
}

TEST_CASE("builder rejects malformed input") {
  SystemBuilder b;
  b.observable("x", Domain::boolean()).observable("n", Domain::range(0, 2));
  b.bstate("q", {{"x", true}, {"n", std::int64_t{1}}}, true);
  CHECK_THROWS_AS(b.bstate("q", {{"x", true}, {"n", std::int64_t{1}}}), ModelError);
  CHECK_THROWS_AS(b.bstate("u", {{"x", true}}), ModelError);
  CHECK_THROWS_AS(b.bstate("u", {{"x", true}, {"n", std::int64_t{5}}}), ModelError);
  CHECK_THROWS_AS(b.bstate("u", {{"x", true}, {"y", true}, {"n", std::int64_t{0}}}), ModelError);
  CHECK_THROWS_AS(b.bstate("u", {{"x", true}, {"n", std::int64_t{0}}}, true), ModelError);
  CHECK_THROWS_AS(b.observable("late", Domain::boolean()), ModelError);
  CHECK_THROWS_AS(b.btransition("q", "nope"), ModelError);
  CHECK_THROWS_AS(b.build(), ModelError);  // no S-states yet
  b.sstate("r", "x", true);
  CHECK_THROWS_AS(b.sstate("r", "true"), ModelError);
  CHECK_THROWS_AS(b.sstate("s", "zz"), ParseError);
  CHECK_THROWS_AS(b.stransition("r", "x", "nope"), ModelError);
  b.btransition("q", "q").btransition("q", "q");
  SBSystem sys = b.build();
  CHECK(sys.behaviour().successors[0].size() == 1);
}

TEST_CASE("property: regions are sat sets and shrink under strengthening") {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 300; ++iter) {
    SBSystem sys = random_system(rng);
    for (SState r = 0; r < sys.sstate_count(); ++r) {
      const Formula& l = sys.structure().labels[r];
      CHECK(constraint_region(sys, r) == sat_set(l, sys.observation().table));

      Formula extra = random_formula(rng, sys.observables().size(), 2);
      SBSystem strong = SystemBuilder(sys).relabel(sys.sstate_name(r), to_string(Formula::conjunction(l, extra))).build();
      auto before = constraint_region(sys, r);
      auto after = constraint_region(strong, r);
      CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));

      bool flagged = false;
      for (const auto& v : check_well_formed(strong).violations) {
        flagged = flagged || (v.kind == Violation::Kind::unsatisfiable_label && v.sstate == r);
      }
      CHECK(flagged == after.empty());
    }
    for (BState q = 0; q < sys.bstate_count(); ++q) {
      CHECK_NOTHROW(observe(sys, q));
    }
  }
}
