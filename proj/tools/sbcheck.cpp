// sbcheck: command-line front end.
//
//   sbcheck validate|flatten|adapt|equiv|ctl|simulate <file> [flags]
//
// Exit codes: 0 ok / property holds, 1 property fails or the two methods
// disagree, 2 usage or parse error, 3 ill-formed model.

#include "sbcheck/adapt.hpp"
#include "sbcheck/ctl.hpp"
#include "sbcheck/flat.hpp"
#include "sbcheck/ingest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

using namespace sbcheck;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kIllFormed = 3;

struct Options {
  std::string file;
  bool json = false;
  bool timing = false;

  // flatten
  bool dot = false;

  // adapt / equiv
  bool weak = false;
  bool strong = false;
  bool both = false;
  std::string method = "both";
  bool witness = false;
  std::string strong_reading = "all";

  // ctl
  std::string formula;

  // simulate
  std::size_t steps = 20;
  std::uint64_t seed = 0;
};

bool color() {
  const char* v = std::getenv("SBCHECK_COLOR");
  return v && std::string_view(v) == "1";
}

std::string verdict(bool b) {
  std::string s = b ? "true" : "false";
  if (!color()) {
    return s;
  }
  return (b ? "\x1b[32m" : "\x1b[31m") + s + "\x1b[0m";
}

StrongReading reading_of(const Options& o) {
  return o.strong_reading == "literal" ? StrongReading::some_branch : StrongReading::all_branches;
}

// Loads and checks well-formedness; returns an exit code on failure.
std::optional<int> load(const Options& o, std::optional<SBSystem>& out, bool report_wf = true) {
  try {
    out = load_file(o.file);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << e.what() << "\n";
    return kUsage;
  }
  if (report_wf) {
    WellFormedness wf = check_well_formed(*out);
    if (!wf.ok()) {
      for (const auto& v : wf.violations) {
        std::cerr << "ill-formed: " << v.message << "\n";
      }
      return kIllFormed;
    }
  }
  return std::nullopt;
}

std::string rule_between(const FlatLTS& lts, std::size_t a, std::size_t b) {
  for (const auto& e : lts.transitions) {
    if (e.from == a && e.to == b) {
      return std::string(to_string(e.rule));
    }
  }
  return "deadlock";
}

void print_trace(std::ostream& os, const Trace& t, const FlatLTS& lts, const SBSystem& sys) {
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    if (i > 0) {
      os << "    --" << rule_between(lts, t.states[i - 1], t.states[i]) << "--> ";
    } else {
      os << "    ";
    }
    os << format_state(lts.states[t.states[i]], sys) << "  [" << to_string(lts.classes[t.states[i]]) << "]\n";
  }
  if (t.loop_start) {
    os << "    --" << rule_between(lts, t.states.back(), t.states[*t.loop_start]) << "--> back to step "
       << *t.loop_start << "\n";
  }
}

json trace_json(const Trace& t, const FlatLTS& lts, const SBSystem& sys) {
  json steps = json::array();
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    json s;
    s["id"] = t.states[i];
    s["state"] = format_state(lts.states[t.states[i]], sys);
    s["rule"] = i == 0 ? json(nullptr) : json(rule_between(lts, t.states[i - 1], t.states[i]));
    steps.push_back(std::move(s));
  }
  return {{"states", steps}, {"loop_start", t.loop_start ? json(*t.loop_start) : json(nullptr)}};
}

int cmd_validate(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys, false)) {
    return *rc;
  }
  WellFormedness wf = check_well_formed(*sys);
  if (o.json) {
    json doc;
    doc["ok"] = wf.ok();
    doc["violations"] = json::array();
    for (const auto& v : wf.violations) {
      doc["violations"].push_back(
          {{"kind", v.kind == Violation::Kind::unsatisfiable_label ? "unsatisfiable_label" : "initial_state_outside_region"},
           {"sstate", sys->sstate_name(v.sstate)},
           {"message", v.message}});
    }
    std::cout << doc.dump(2) << "\n";
  } else if (wf.ok()) {
    std::cout << "ok: " << sys->name() << " (" << sys->bstate_count() << " B-states, " << sys->sstate_count()
              << " S-states)\n";
  } else {
    for (const auto& v : wf.violations) {
      std::cout << "violation: " << v.message << "\n";
    }
  }
  return wf.ok() ? kOk : kIllFormed;
}

int cmd_flatten(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys)) {
    return *rc;
  }
  FlatLTS lts = flatten(*sys);
  if (o.dot) {
    std::cout << export_dot(lts, *sys);
  } else if (o.json) {
    std::cout << export_json(lts, *sys);
  } else {
    std::cout << lts.states.size() << " states, " << lts.transitions.size() << " transitions\n";
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
      std::cout << (i == lts.init ? "> " : "  ") << i << " " << format_state(lts.states[i], *sys) << " "
                << to_string(lts.classes[i]) << "\n";
    }
    for (const auto& e : lts.transitions) {
      std::cout << "  " << e.from << " -> " << e.to << " " << to_string(e.rule) << "\n";
    }
  }
  return kOk;
}

struct Verdict {
  AdaptKind kind;
  std::optional<bool> relational;
  std::optional<bool> ctl;
  double relational_ms = 0;
  double ctl_ms = 0;
  std::optional<Trace> trace;
  // first steady flat state (q, r, -) on which the two methods disagree
  std::optional<std::pair<BState, SState>> discrepancy;
};

template <class F>
auto timed(double& ms, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  auto v = f();
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

Verdict decide(AdaptKind kind, const SBSystem& sys, const FlatLTS& lts, const Options& o) {
  Verdict v{kind, {}, {}, 0, 0, {}, {}};
  std::optional<AdaptRelation> rel;
  std::optional<CheckResult> res;
  if (o.method != "ctl") {
    rel = timed(v.relational_ms, [&] {
      return kind == AdaptKind::weak ? weak_relation(sys) : strong_relation(sys, reading_of(o));
    });
    v.relational = rel->contains(sys.behaviour().init, sys.structure().init);
  }
  if (o.method != "relational" || o.witness) {
    const CtlFormula& f = kind == AdaptKind::weak ? weak_adaptability_formula() : strong_adaptability_formula();
    res = timed(v.ctl_ms, [&] { return check_ctl(lts, sys, f); });
    if (o.method != "relational") {
      v.ctl = res->holds_at_init;
    }
    v.trace = res->trace;
  }
  if (rel && v.ctl && *v.relational != *v.ctl) {
    for (std::size_t i = 0; i < lts.states.size(); ++i) {
      const FlatState& s = lts.states[i];
      if (s.pending || rel->contains(s.q, s.r) == res->satisfying[i]) {
        continue;
      }
      auto cand = std::make_pair(s.q, s.r);
      auto key = [&](std::pair<BState, SState> p) {
        return std::make_pair(sys.bstate_name(p.first), sys.sstate_name(p.second));
      };
      if (!v.discrepancy || key(cand) < key(*v.discrepancy)) {
        v.discrepancy = cand;
      }
    }
  }
  return v;
}

int cmd_adapt(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys)) {
    return *rc;
  }
  FlatLTS lts = flatten(*sys);
  std::vector<AdaptKind> kinds;
  if (o.weak || o.both || !o.strong) {
    kinds.push_back(AdaptKind::weak);
  }
  if (o.strong || o.both || !o.weak) {
    kinds.push_back(AdaptKind::strong);
  }

  std::vector<Verdict> verdicts;
  for (AdaptKind k : kinds) {
    verdicts.push_back(decide(k, *sys, lts, o));
  }

  int rc = kOk;
  for (const auto& v : verdicts) {
    bool holds = v.relational.value_or(true) && v.ctl.value_or(true);
    if (!holds || v.discrepancy || (v.relational && v.ctl && *v.relational != *v.ctl)) {
      rc = kFails;
    }
  }

  if (o.json) {
    json doc;
    doc["system"] = sys->name();
    doc["strong_reading"] = o.strong_reading;
    doc["verdicts"] = json::array();
    for (const auto& v : verdicts) {
      json jv;
      jv["property"] = std::string(to_string(v.kind));
      jv["relational"] = v.relational ? json(*v.relational) : json(nullptr);
      jv["ctl"] = v.ctl ? json(*v.ctl) : json(nullptr);
      if (v.relational && v.ctl) {
        jv["agree"] = *v.relational == *v.ctl;
      }
      if (v.discrepancy) {
        jv["discrepancy"] = {{"q", sys->bstate_name(v.discrepancy->first)},
                             {"r", sys->sstate_name(v.discrepancy->second)}};
      }
      if (o.witness && v.trace) {
        jv["trace"] = trace_json(*v.trace, lts, *sys);
      }
      if (o.timing) {
        jv["relational_ms"] = v.relational_ms;
        jv["ctl_ms"] = v.ctl_ms;
      }
      doc["verdicts"].push_back(std::move(jv));
    }
    std::cout << doc.dump(2) << "\n";
    return rc;
  }

  for (const auto& v : verdicts) {
    std::cout << to_string(v.kind) << ":";
    if (v.relational) {
      std::cout << " relational=" << verdict(*v.relational);
      if (o.timing) std::cout << " (" << v.relational_ms << " ms)";
    }
    if (v.ctl) {
      std::cout << " ctl=" << verdict(*v.ctl);
      if (o.timing) std::cout << " (" << v.ctl_ms << " ms)";
    }
    if (v.relational && v.ctl) {
      std::cout << (*v.relational == *v.ctl ? "  methods agree" : "  methods DISAGREE");
    }
    std::cout << "\n";
    if (v.discrepancy) {
      std::cout << "DISCREPANCY: " << to_string(v.kind) << " adaptability of (" << sys->bstate_name(v.discrepancy->first)
                << ", " << sys->sstate_name(v.discrepancy->second) << ") differs between the methods\n";
    }
    if (o.witness && v.trace) {
      bool ctl_holds = v.ctl.value_or(v.relational.value_or(false));
      std::cout << "  " << (ctl_holds ? "witness" : "counterexample") << " for "
                << to_string(v.kind == AdaptKind::weak ? weak_adaptability_formula() : strong_adaptability_formula())
                << ":\n";
      print_trace(std::cout, *v.trace, lts, *sys);
    }
  }
  return rc;
}

int cmd_equiv(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys)) {
    return *rc;
  }
  AdaptKind kind = o.strong ? AdaptKind::strong : AdaptKind::weak;
  EquivPartition part = equiv_partition(*sys, kind, reading_of(o));
  if (o.json) {
    json doc;
    doc["kind"] = std::string(to_string(kind));
    doc["blocks"] = json::array();
    for (const auto& b : part.blocks) {
      json jb = json::array();
      for (BState q : b) jb.push_back(sys->bstate_name(q));
      doc["blocks"].push_back(std::move(jb));
    }
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }
  std::cout << part.blocks.size() << " " << to_string(kind) << " adaptation classes\n";
  for (std::size_t i = 0; i < part.blocks.size(); ++i) {
    std::cout << "  [" << i << "]";
    for (BState q : part.blocks[i]) std::cout << " " << sys->bstate_name(q);
    std::cout << "\n";
  }
  return kOk;
}

int cmd_ctl(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys)) {
    return *rc;
  }
  std::optional<CtlFormula> f;
  try {
    f = parse_ctl(o.formula);
    validate_atoms(*f, *sys);
  } catch (const ParseError& e) {
    std::cerr << "formula:" << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "formula: " << e.what() << "\n";
    return kUsage;
  }
  FlatLTS lts = flatten(*sys);
  CheckResult res = check_ctl(lts, *sys, *f);
  std::size_t count = std::count(res.satisfying.begin(), res.satisfying.end(), true);
  if (o.json) {
    json doc;
    doc["formula"] = to_string(*f);
    doc["holds"] = res.holds_at_init;
    json sat = json::array();
    for (std::size_t i = 0; i < res.satisfying.size(); ++i) {
      if (res.satisfying[i]) sat.push_back(i);
    }
    doc["satisfying"] = std::move(sat);
    if (o.witness && res.trace) {
      doc["trace"] = trace_json(*res.trace, lts, *sys);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << to_string(*f) << ": " << verdict(res.holds_at_init) << " (" << count << "/" << lts.states.size()
              << " states satisfy)\n";
    if (o.witness && res.trace) {
      std::cout << "  " << (res.holds_at_init ? "witness" : "counterexample") << ":\n";
      print_trace(std::cout, *res.trace, lts, *sys);
    }
  }
  return res.holds_at_init ? kOk : kFails;
}

int cmd_simulate(const Options& o) {
  std::optional<SBSystem> sys;
  if (auto rc = load(o, sys)) {
    return *rc;
  }
  std::mt19937_64 rng(o.seed);
  FlatState s{sys->behaviour().init, sys->structure().init, std::nullopt};
  json steps = json::array();
  steps.push_back({{"rule", nullptr}, {"state", format_state(s, *sys)}});
  if (!o.json) {
    std::cout << "0: " << format_state(s, *sys) << "\n";
  }
  for (std::size_t i = 1; i <= o.steps; ++i) {
    auto out = successors(*sys, s);
    if (out.empty()) {
      if (!o.json) std::cout << "   no successor: " << to_string(classify(*sys, s)) << "\n";
      break;
    }
    // modulo keeps runs identical across standard libraries
    const FlatTransition& t = out[rng() % out.size()];
    s = t.to;
    steps.push_back({{"rule", std::string(to_string(t.rule))}, {"state", format_state(s, *sys)}});
    if (!o.json) {
      std::cout << i << ": --" << to_string(t.rule) << "--> " << format_state(s, *sys) << "\n";
    }
  }
  if (o.json) {
    json doc;
    doc["seed"] = o.seed;
    doc["steps"] = std::move(steps);
    std::cout << doc.dump(2) << "\n";
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of two-level self-adaptive S[B]-systems"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  auto file_arg = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "model file (.sbs)")->required();
    sub->add_flag("--json", o.json, "machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "check well-formedness");
  file_arg(validate);

  auto* flat = app.add_subcommand("flatten", "build the flat LTS");
  file_arg(flat);
  flat->add_flag("--dot", o.dot, "Graphviz output");

  auto* adapt = app.add_subcommand("adapt", "decide weak/strong adaptability");
  file_arg(adapt);
  auto* fw = adapt->add_flag("--weak", o.weak, "weak adaptability only");
  auto* fs = adapt->add_flag("--strong", o.strong, "strong adaptability only");
  auto* fb = adapt->add_flag("--both", o.both, "both properties (default)");
  fw->excludes(fs)->excludes(fb);
  fs->excludes(fb);
  adapt->add_option("--method", o.method, "relational, ctl or both")
      ->check(CLI::IsMember({"relational", "ctl", "both"}));
  adapt->add_flag("--witness", o.witness, "print the CTL witness or counterexample path");
  adapt->add_option("--strong-reading", o.strong_reading, "all (every started adaptation) or literal (some)")
      ->check(CLI::IsMember({"all", "literal"}));
  adapt->add_flag("--timing", o.timing, "report per-method time");

  auto* equiv = app.add_subcommand("equiv", "adaptation equivalence classes");
  file_arg(equiv);
  auto* ew = equiv->add_flag("--weak", o.weak, "weak equivalence (default)");
  auto* es = equiv->add_flag("--strong", o.strong, "strong equivalence");
  ew->excludes(es);
  equiv->add_option("--strong-reading", o.strong_reading, "all or literal")
      ->check(CLI::IsMember({"all", "literal"}));

  auto* ctl = app.add_subcommand("ctl", "check a CTL formula at the initial flat state");
  file_arg(ctl);
  ctl->add_option("--formula,-f", o.formula, "CTL formula")->required();
  ctl->add_flag("--witness", o.witness, "print a witness or counterexample path");

  auto* sim = app.add_subcommand("simulate", "random walk over the flat semantics");
  file_arg(sim);
  sim->add_option("--steps,-n", o.steps, "number of steps");
  sim->add_option("--seed,-s", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (o.dot && o.json) {
    std::cerr << "error: --dot and --json are mutually exclusive\n";
    return kUsage;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*flat) return cmd_flatten(o);
    if (*adapt) return cmd_adapt(o);
    if (*equiv) return cmd_equiv(o);
    if (*ctl) return cmd_ctl(o);
    if (*sim) return cmd_simulate(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
