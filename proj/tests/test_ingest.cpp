#include "fixtures.hpp"
#include "random_system.hpp"

#include "sbcheck/ingest.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sbcheck;
using namespace sbtest;

namespace {

const char* kSmall = R"(system "small"
observables { x : bool; n : int[-1..2]; c : enum{red, green}; }
behaviour {
  state a { x = true, n = -1, c = red } init;
  state b { x = false, n = 2, c = green };
  a -> b;
  b -> a;
}
structure {
  state r : "x || n > 0" init;
  state s : "c == green";
  r -["!x"]-> s;
}
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

// Line and column of the error raised by loading `text`.
std::pair<std::size_t, std::size_t> error_at(const std::string& text, const std::string& needle) {
  try {
    load_text(text);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
    return {e.position().line, e.position().column};
  }
  FAIL("no error raised");
  return {0, 0};
}

} // namespace

TEST_CASE("bundled models") {
  const SBSystem& s0 = predator_s0();
  const SBSystem& s1 = predator_s1();
  CHECK(s0.name() == "predator_s0");
  CHECK(s0.structure().states == std::vector<std::string>{"r0", "r1", "r2"});
  CHECK(s0.sstate_name(s0.structure().init) == "r0");
  CHECK(to_string(s0.structure().labels[0]) == "p == 0 && (!eat -> a0 > 0) && !moved");
  CHECK(to_string(s0.structure().labels[1]) == "p == 1 && (!eat -> a1 > 0) && !moved");
  CHECK(to_string(s0.structure().labels[2]) == "moved");

  auto edges = [](const SBSystem& sys) {
    std::vector<std::string> out;
    for (const auto& t : sys.structure().transitions) {
      out.push_back(sys.sstate_name(t.from) + " " + to_string(sys.structure().invariants[t.invariant]) + " " +
                    sys.sstate_name(t.to));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(edges(s0) == std::vector<std::string>{"r0 !eat r2", "r0 !moved r1", "r1 !eat r2", "r1 !moved r0"});
  CHECK(edges(s1) == std::vector<std::string>{"r0 p == 1 r1", "r1 !eat r2"});

  // S1 differs only in the transition function
  CHECK(s0.observables() == s1.observables());
  CHECK(s0.behaviour() == s1.behaviour());
  CHECK(s0.observation() == s1.observation());
  CHECK(s0.structure().labels == s1.structure().labels);
  CHECK(s0.bstate_count() == 17);
}

TEST_CASE("small file with every domain kind") {
  SBSystem sys = load_text(kSmall);
  CHECK(sys.bstate_count() == 2);
  CHECK(format_valuation(observe(sys, "a"), sys.observables()) == "(x=true, n=-1, c=red)");
  CHECK(load_text(save(sys)) == sys);
}

TEST_CASE("load errors carry positions") {
  std::string text = kSmall;
  CHECK(error_at(replace(text, "state b { x = false, n = 2, c = green };", "state b { x = false, n = 2, c = green } init;"),
                 "init") == std::pair<std::size_t, std::size_t>{5, 9});
  CHECK(error_at(replace(text, " init;\n  state b", ";\n  state b"), "no init").first == 8);
  CHECK(error_at(replace(text, "state b {", "state a {"), "duplicate").first == 5);
  CHECK(error_at(replace(text, "n = 2,", "m = 2,"), "undeclared").first == 5);
  CHECK(error_at(replace(text, "n = 2,", "n = 3,"), "outside").first == 5);
  CHECK(error_at(replace(text, "c = green }", "c = blue }"), "blue").first == 5);
  CHECK(error_at(replace(text, "\"c == green\"", "\"c < green\""), "type mismatch") ==
        std::pair<std::size_t, std::size_t>{11, 14});
  CHECK(error_at(replace(text, "\"!x\"", "\"!y\""), "undeclared") == std::pair<std::size_t, std::size_t>{12, 9});
  CHECK(error_at(replace(text, "b -> a;", "b -> z;"), "z").first == 7);
  CHECK(error_at(replace(text, "r -[", "r -("), "expected '['").first == 12);
  CHECK(error_at(replace(text, "int[-1..2]", "int[3..2]"), "empty").first == 2);
  CHECK(error_at(replace(text, "a -> b;", "a -> b;\n  state late { x = true, n = 0, c = red };"), "before").first == 7);
  CHECK(error_at(replace(text, "system \"small\"", "sys \"small\""), "expected 'system'").first == 1);
  CHECK(error_at(std::string(kSmall) + "extra", "unexpected").first == 14);
  CHECK_THROWS_AS(load_file(model_path("does_not_exist.sbs")), IoError);
}

TEST_CASE("canonical save") {
  SBSystem one = load_file(model_path("minimal.sbs"));
  std::string text = save(one);
  CHECK(text ==
        "system \"minimal\"\n"
        "observables { x : bool; }\n"
        "behaviour { state q0 { x = true } init; }\n"
        "structure { state r0 : \"x\" init; }\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  for (const SBSystem* sys : {&predator_s0(), &predator_s1()}) {
    std::string a = save(*sys);
    CHECK(load_text(a) == *sys);
    CHECK(save(load_text(a)) == a);
    CHECK(save(*sys) == a);
  }
}

TEST_CASE("names and formulas with quotes survive a round trip") {
  SBSystem sys = SystemBuilder()
                     .name("say \"hi\" \\ bye")
                     .observable("x", Domain::boolean())
                     .bstate("q", {{"x", false}}, true)
                     .sstate("r", "!x", true)
                     .build();
  CHECK(load_text(save(sys)) == sys);
}

TEST_CASE("property: random systems round-trip") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 300; ++iter) {
    SBSystem sys = random_system(rng);
    std::string text = save(sys);
    SBSystem back = load_text(text);
    REQUIRE(back == sys);
    CHECK(save(back) == text);
  }
}

TEST_CASE("property: mangled input raises only positioned parse errors") {
  std::mt19937_64 rng(62);
  const std::string base = save(predator_s0());
  const std::string alphabet = "{}[]();:,=<>!+-@\".\n azq0129_&|/";
  for (int iter = 0; iter < 2000; ++iter) {
    std::string text = base;
    std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
    for (int edits = 1 + iter % 4; edits > 0; --edits) {
      std::size_t at = pos(rng) % text.size();
      switch (rng() % 3) {
      case 0: text.erase(at, 1 + rng() % 6); break;
      case 1: text.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
      default: text[at] = alphabet[rng() % alphabet.size()]; break;
      }
      if (text.empty()) text = "x";
    }
    try {
      load_text(text);
    } catch (const ParseError& e) {
      CHECK(e.position().line >= 1);
      CHECK(e.position().column >= 1);
    }
  }
}
