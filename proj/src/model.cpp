#include "sbcheck/model.hpp"

#include <algorithm>

namespace sbcheck {

std::vector<STransition> StructureMachine::outgoing(SState r) const {
  std::vector<STransition> out;
  for (const auto& t : transitions) {
    if (t.from == r) {
      out.push_back(t);
    }
  }
  return out;
}

namespace {

template <typename Names>
std::optional<std::size_t> index_of(const Names& names, std::string_view id) {
  auto it = std::lower_bound(names.begin(), names.end(), id);
  if (it == names.end() || *it != id) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names.begin());
}

} // namespace

std::optional<BState> SBSystem::find_bstate(std::string_view id) const { return index_of(behaviour_.states, id); }
std::optional<SState> SBSystem::find_sstate(std::string_view id) const { return index_of(structure_.states, id); }

// ---------------------------------------------------------------------------

SystemBuilder::SystemBuilder(const SBSystem& base) : name_(base.name()), observables_(base.observables()) {
  const auto& b = base.behaviour();
  for (BState q = 0; q < b.states.size(); ++q) {
    bstates_.emplace(b.states[q], base.observation().table[q]);
    for (BState t : b.successors[q]) {
      btrans_.emplace(b.states[q], b.states[t]);
    }
  }
  binit_ = b.states[b.init];

  const auto& s = base.structure();
  for (SState r = 0; r < s.states.size(); ++r) {
    sstates_.emplace(s.states[r], s.labels[r]);
  }
  sinit_ = s.states[s.init];
  for (const auto& t : s.transitions) {
    const Formula& inv = s.invariants[t.invariant];
    std::string text = to_string(inv);
    invariants_.emplace(text, inv);
    strans_.emplace(s.states[t.from], text, s.states[t.to]);
  }
}

SystemBuilder& SystemBuilder::name(std::string n) {
  name_ = std::move(n);
  return *this;
}

SystemBuilder& SystemBuilder::observable(std::string name, Domain domain) {
  if (!bstates_.empty() || !sstates_.empty()) {
    throw ModelError("observables must be declared before states");
  }
  observables_.add({std::move(name), std::move(domain)});
  return *this;
}

SystemBuilder& SystemBuilder::bstate(const std::string& id,
                                     const std::vector<std::pair<std::string, Literal>>& bindings, bool init) {
  if (bstates_.count(id)) {
    throw ModelError("duplicate B-state '" + id + "'");
  }
  std::vector<std::optional<Value>> values(observables_.size());
  for (const auto& [var, lit] : bindings) {
    auto idx = observables_.find(var);
    if (!idx) {
      throw ModelError("B-state '" + id + "' binds undeclared observable '" + var + "'");
    }
    if (values[*idx]) {
      throw ModelError("B-state '" + id + "' binds '" + var + "' twice");
    }
    try {
      values[*idx] = encode_literal(observables_[*idx].domain, lit);
    } catch (const ModelError& e) {
      throw ModelError("B-state '" + id + "', observable '" + var + "': " + e.what());
    }
  }
  std::vector<Value> total;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      throw ModelError("B-state '" + id + "' does not bind observable '" + observables_[i].name + "'");
    }
    total.push_back(*values[i]);
  }
  if (init) {
    if (binit_) {
      throw ModelError("duplicate init B-state '" + id + "' (already '" + *binit_ + "')");
    }
    binit_ = id;
  }
  bstates_.emplace(id, Valuation(std::move(total)));
  return *this;
}

void SystemBuilder::require_bstate(const std::string& id) const {
  if (!bstates_.count(id)) {
    throw ModelError("undeclared B-state '" + id + "'");
  }
}

void SystemBuilder::require_sstate(const std::string& id) const {
  if (!sstates_.count(id)) {
    throw ModelError("undeclared S-state '" + id + "'");
  }
}

SystemBuilder& SystemBuilder::btransition(const std::string& from, const std::string& to) {
  require_bstate(from);
  require_bstate(to);
  btrans_.emplace(from, to);
  return *this;
}

SystemBuilder& SystemBuilder::sstate(const std::string& id, std::string_view label, bool init) {
  return sstate(id, parse_formula(label, observables_), init);
}

SystemBuilder& SystemBuilder::sstate(const std::string& id, Formula label, bool init) {
  if (sstates_.count(id)) {
    throw ModelError("duplicate S-state '" + id + "'");
  }
  if (init) {
    if (sinit_) {
      throw ModelError("duplicate init S-state '" + id + "' (already '" + *sinit_ + "')");
    }
    sinit_ = id;
  }
  sstates_.emplace(id, std::move(label));
  return *this;
}

SystemBuilder& SystemBuilder::stransition(const std::string& from, std::string_view invariant,
                                          const std::string& to) {
  return stransition(from, parse_formula(invariant, observables_), to);
}

SystemBuilder& SystemBuilder::stransition(const std::string& from, Formula invariant, const std::string& to) {
  require_sstate(from);
  require_sstate(to);
  std::string text = to_string(invariant);
  invariants_.emplace(text, std::move(invariant));
  strans_.emplace(from, std::move(text), to);
  return *this;
}

SystemBuilder& SystemBuilder::set_binit(const std::string& id) {
  require_bstate(id);
  binit_ = id;
  return *this;
}

SystemBuilder& SystemBuilder::set_sinit(const std::string& id) {
  require_sstate(id);
  sinit_ = id;
  return *this;
}

SystemBuilder& SystemBuilder::relabel(const std::string& sstate, std::string_view label) {
  require_sstate(sstate);
  sstates_.at(sstate) = parse_formula(label, observables_);
  return *this;
}

SystemBuilder& SystemBuilder::remove_btransition(const std::string& from, const std::string& to) {
  btrans_.erase({from, to});
  return *this;
}

SystemBuilder& SystemBuilder::remove_stransition(const std::string& from, const std::string& invariant_text,
                                                 const std::string& to) {
  strans_.erase({from, invariant_text, to});
  return *this;
}

SBSystem SystemBuilder::build() const {
  if (!binit_) {
    throw ModelError("behaviour has no init state");
  }
  if (!sinit_) {
    throw ModelError("structure has no init state");
  }

  SBSystem sys;
  sys.name_ = name_;
  sys.observables_ = observables_;

  auto& b = sys.behaviour_;
  for (const auto& [id, val] : bstates_) {
    b.states.push_back(id);
    sys.observation_.table.push_back(val);
  }
  b.successors.resize(b.states.size());
  for (const auto& [from, to] : btrans_) {
    b.successors[*sys.find_bstate(from)].push_back(*sys.find_bstate(to));
  }
  b.init = *sys.find_bstate(*binit_);

  auto& s = sys.structure_;
  for (const auto& [id, label] : sstates_) {
    s.states.push_back(id);
    s.labels.push_back(label);
  }
  s.init = *sys.find_sstate(*sinit_);

  // only invariants still in use, ordered by text
  std::set<std::string> used;
  for (const auto& t : strans_) {
    used.insert(std::get<1>(t));
  }
  std::vector<std::string> inv_texts(used.begin(), used.end());
  for (const auto& text : inv_texts) {
    s.invariants.push_back(invariants_.at(text));
  }
  for (const auto& [from, text, to] : strans_) {
    auto inv = static_cast<std::size_t>(std::lower_bound(inv_texts.begin(), inv_texts.end(), text) - inv_texts.begin());
    s.transitions.push_back({*sys.find_sstate(from), inv, *sys.find_sstate(to)});
  }
  std::sort(s.transitions.begin(), s.transitions.end());
  return sys;
}

// ---------------------------------------------------------------------------

const Valuation& observe(const SBSystem& sys, BState q) {
  if (q >= sys.bstate_count()) {
    throw ModelError("unknown B-state #" + std::to_string(q));
  }
  return sys.observation().table[q];
}

const Valuation& observe(const SBSystem& sys, std::string_view id) {
  auto q = sys.find_bstate(id);
  if (!q) {
    throw ModelError("unknown B-state '" + std::string(id) + "'");
  }
  return sys.observation().table[*q];
}

std::vector<BState> sat_set(const Formula& f, const SBSystem& sys) {
  return sat_set(f, std::span<const Valuation>(sys.observation().table));
}

std::vector<BState> constraint_region(const SBSystem& sys, SState r) {
  if (r >= sys.sstate_count()) {
    throw ModelError("unknown S-state #" + std::to_string(r));
  }
  return sat_set(sys.structure().labels[r], sys);
}

WellFormedness check_well_formed(const SBSystem& sys) {
  WellFormedness report;
  const auto& s = sys.structure();
  for (SState r = 0; r < s.states.size(); ++r) {
    if (constraint_region(sys, r).empty()) {
      report.violations.push_back({Violation::Kind::unsatisfiable_label, r,
                                   "L(" + s.states[r] + ") = \"" + to_string(s.labels[r]) +
                                       "\" holds in no B-state"});
    }
  }
  BState q0 = sys.behaviour().init;
  if (!sys.in_region(q0, s.init)) {
    report.violations.push_back({Violation::Kind::initial_state_outside_region, s.init,
                                 "initial B-state " + sys.bstate_name(q0) + " " +
                                     format_valuation(sys.observation().table[q0], sys.observables()) +
                                     " does not satisfy L(" + s.states[s.init] + ")"});
  }
  return report;
}

} // namespace sbcheck
