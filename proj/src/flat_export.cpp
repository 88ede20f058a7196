#include "sbcheck/flat.hpp"

#include <json.hpp>

#include <sstream>

namespace sbcheck {

namespace {

using json = nlohmann::ordered_json;

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out;
}

std::string invariant_text(const SBSystem& sys, std::size_t inv) { return to_string(sys.structure().invariants[inv]); }

} // namespace

std::string export_dot(const FlatLTS& lts, const SBSystem& sys) {
  std::ostringstream os;
  os << "digraph flat {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  os << "  init [shape=point];\n";
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    const FlatState& s = lts.states[i];
    std::string label = sys.bstate_name(s.q) + "," + sys.sstate_name(s.r);
    if (s.pending) {
      label += ",(" + invariant_text(sys, s.pending->invariant) + "," + sys.sstate_name(s.pending->target) + ")";
    }
    os << "  s" << i << " [label=\"" << dot_escape(label) << "\"";
    if (s.pending || lts.classes[i] == StateClass::adapting) {
      os << ", style=filled, fillcolor=\"#f4cccc\"";
    }
    if (lts.classes[i] == StateClass::stuck) {
      os << ", peripheries=2";
    }
    os << "];\n";
  }
  os << "  init -> s" << lts.init << ";\n";
  for (const auto& e : lts.transitions) {
    FlatTransition t{lts.states[e.from], lts.states[e.to], e.rule};
    FlatLabel l = t.label();
    std::string label = sys.sstate_name(l.r);
    if (l.adaptation) {
      label += "," + invariant_text(sys, l.adaptation->invariant) + "," + sys.sstate_name(l.adaptation->target);
    }
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(label) << "\"";
    if (l.adapting) {
      os << ", style=dashed";
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const FlatLTS& lts, const SBSystem& sys) {
  json doc;
  json states = json::array();
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    const FlatState& s = lts.states[i];
    json js;
    js["id"] = i;
    js["q"] = sys.bstate_name(s.q);
    js["r"] = sys.sstate_name(s.r);
    if (s.pending) {
      js["pending"] = {{"inv", invariant_text(sys, s.pending->invariant)},
                       {"target", sys.sstate_name(s.pending->target)}};
    } else {
      js["pending"] = nullptr;
    }
    js["class"] = std::string(to_string(lts.classes[i]));
    states.push_back(std::move(js));
  }
  doc["states"] = std::move(states);
  doc["init"] = lts.init;

  json transitions = json::array();
  for (const auto& e : lts.transitions) {
    FlatLabel l = FlatTransition{lts.states[e.from], lts.states[e.to], e.rule}.label();
    json jt;
    jt["from"] = e.from;
    jt["to"] = e.to;
    jt["kind"] = l.adapting ? "adapt" : "steady";
    jt["r"] = sys.sstate_name(l.r);
    if (l.adaptation) {
      jt["inv"] = invariant_text(sys, l.adaptation->invariant);
      jt["target"] = sys.sstate_name(l.adaptation->target);
    } else {
      jt["inv"] = nullptr;
      jt["target"] = nullptr;
    }
    transitions.push_back(std::move(jt));
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void bad(const std::string& why) { throw ParseError({1, 1}, "flat LTS JSON: " + why); }

std::size_t resolve_sstate(const SBSystem& sys, const json& v) {
  auto r = sys.find_sstate(v.get<std::string>());
  if (!r) {
    bad("unknown S-state '" + v.get<std::string>() + "'");
  }
  return *r;
}

std::size_t resolve_invariant(const SBSystem& sys, const std::string& text) {
  const auto& invs = sys.structure().invariants;
  for (std::size_t i = 0; i < invs.size(); ++i) {
    if (to_string(invs[i]) == text) {
      return i;
    }
  }
  bad("unknown invariant '" + text + "'");
}

StateClass class_from(const std::string& s) {
  if (s == "steady") return StateClass::steady;
  if (s == "adapting") return StateClass::adapting;
  if (s == "stuck") return StateClass::stuck;
  bad("unknown class '" + s + "'");
}

} // namespace

FlatLTS import_json(std::string_view text, const SBSystem& sys) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }

  FlatLTS lts;
  try {
    const json& states = doc.at("states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      const json& js = states[i];
      if (js.at("id").get<std::size_t>() != i) {
        bad("state ids must be consecutive from 0");
      }
      FlatState s;
      auto q = sys.find_bstate(js.at("q").get<std::string>());
      if (!q) {
        bad("unknown B-state '" + js.at("q").get<std::string>() + "'");
      }
      s.q = *q;
      s.r = resolve_sstate(sys, js.at("r"));
      if (!js.at("pending").is_null()) {
        const json& p = js.at("pending");
        s.pending = Pending{resolve_invariant(sys, p.at("inv").get<std::string>()), resolve_sstate(sys, p.at("target"))};
      }
      lts.states.push_back(s);
      lts.classes.push_back(class_from(js.at("class").get<std::string>()));
    }
    lts.init = doc.at("init").get<std::size_t>();
    if (lts.init >= lts.states.size()) {
      bad("init out of range");
    }

    for (const json& jt : doc.at("transitions")) {
      std::size_t from = jt.at("from").get<std::size_t>();
      std::size_t to = jt.at("to").get<std::size_t>();
      if (from >= lts.states.size() || to >= lts.states.size()) {
        bad("transition endpoint out of range");
      }
      const FlatState& a = lts.states[from];
      const FlatState& b = lts.states[to];
      Rule rule;
      if (jt.at("kind") == "steady") {
        rule = Rule::steady;
      } else if (!a.pending) {
        rule = Rule::adapt_start;
      } else if (!b.pending) {
        rule = Rule::adapt_end;
      } else {
        rule = Rule::adapt;
      }
      lts.transitions.push_back({from, to, rule});
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  std::sort(lts.transitions.begin(), lts.transitions.end());
  return lts;
}

} // namespace sbcheck
