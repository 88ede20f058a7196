#include "sbcheck/ingest.hpp"

#include "lexer.hpp"

#include <fstream>
#include <sstream>

namespace sbcheck {

namespace {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

class ModelParser {
public:
  explicit ModelParser(std::string_view text) : ts_(detail::tokenize(text)) {}

  SBSystem parse() {
    ts_.expect_word("system");
    b_.name(ts_.expect(TokenKind::string, "system name string").text);
    observables();
    behaviour();
    structure();
    if (!ts_.at_end()) {
      ts_.fail("unexpected " + detail::describe(ts_.peek()) + " after the structure block");
    }
    return b_.build();
  }

private:
  template <class F>
  void at(SourcePos pos, F&& f) {
    try {
      f();
    } catch (const ModelError& e) {
      throw ParseError(pos, e.what());
    }
  }

  std::int64_t signed_int() {
    bool neg = ts_.accept_punct("-");
    const Token& t = ts_.expect(TokenKind::integer, "integer");
    return neg ? -t.value : t.value;
  }

  void observables() {
    ts_.expect_word("observables");
    ts_.expect_punct("{");
    while (!ts_.accept_punct("}")) {
      const Token& name = ts_.expect(TokenKind::identifier, "observable name");
      SourcePos pos = name.pos;
      std::string id = name.text;
      ts_.expect_punct(":");
      std::optional<Domain> dom;
      if (ts_.accept_word("bool")) {
        dom = Domain::boolean();
      } else if (ts_.accept_word("int")) {
        ts_.expect_punct("[");
        std::int64_t lo = signed_int();
        ts_.expect_punct("..");
        std::int64_t hi = signed_int();
        ts_.expect_punct("]");
        at(pos, [&] { dom = Domain::range(lo, hi); });
      } else if (ts_.accept_word("enum")) {
        ts_.expect_punct("{");
        std::vector<std::string> labels;
        do {
          labels.push_back(ts_.expect(TokenKind::identifier, "enum label").text);
        } while (ts_.accept_punct(","));
        ts_.expect_punct("}");
        at(pos, [&] { dom = Domain::enumeration(std::move(labels)); });
      } else {
        ts_.fail("expected 'bool', 'int' or 'enum', found " + detail::describe(ts_.peek()));
      }
      ts_.expect_punct(";");
      at(pos, [&] { b_.observable(id, *dom); });
    }
  }

  Literal literal() {
    const Token& t = ts_.peek();
    if (t.kind == TokenKind::punct && t.text == "-") {
      return signed_int();
    }
    if (t.kind == TokenKind::integer) {
      return ts_.next().value;
    }
    if (ts_.accept_word("true")) return true;
    if (ts_.accept_word("false")) return false;
    if (t.kind == TokenKind::identifier) {
      return ts_.next().text;
    }
    ts_.fail("expected a value, found " + detail::describe(t));
  }

  void behaviour() {
    const Token& kw = ts_.expect_word("behaviour");
    SourcePos block = kw.pos;
    ts_.expect_punct("{");
    bool has_init = false;
    bool in_transitions = false;
    while (!ts_.is_punct("}")) {
      if (ts_.is_word("state")) {
        const Token& st = ts_.next();
        if (in_transitions) {
          throw ParseError(st.pos, "B-states must be declared before B-transitions");
        }
        const Token& name = ts_.expect(TokenKind::identifier, "B-state name");
        std::string id = name.text;
        SourcePos pos = name.pos;
        std::vector<std::pair<std::string, Literal>> bindings;
        ts_.expect_punct("{");
        if (!ts_.is_punct("}")) {
          do {
            std::string var = ts_.expect(TokenKind::identifier, "observable name").text;
            ts_.expect_punct("=");
            bindings.emplace_back(std::move(var), literal());
          } while (ts_.accept_punct(","));
        }
        ts_.expect_punct("}");
        bool init = ts_.accept_word("init");
        ts_.expect_punct(";");
        at(pos, [&] { b_.bstate(id, bindings, init); });
        has_init = has_init || init;
      } else {
        in_transitions = true;
        const Token& from = ts_.expect(TokenKind::identifier, "'state' or a B-transition");
        SourcePos pos = from.pos;
        std::string a = from.text;
        ts_.expect_punct("->");
        std::string b = ts_.expect(TokenKind::identifier, "B-state name").text;
        ts_.expect_punct(";");
        at(pos, [&] { b_.btransition(a, b); });
      }
    }
    SourcePos close = ts_.next().pos;
    if (!has_init) {
      throw ParseError(close, "behaviour block starting at line " + std::to_string(block.line) + " has no init state");
    }
  }

  Formula formula_of(const Token& str) {
    SourcePos origin{str.pos.line, str.pos.column + 1};
    return parse_formula(str.text, b_.observables(), origin);
  }

  void structure() {
    const Token& kw = ts_.expect_word("structure");
    SourcePos block = kw.pos;
    ts_.expect_punct("{");
    bool has_init = false;
    bool in_transitions = false;
    while (!ts_.is_punct("}")) {
      if (ts_.is_word("state")) {
        const Token& st = ts_.next();
        if (in_transitions) {
          throw ParseError(st.pos, "S-states must be declared before S-transitions");
        }
        const Token& name = ts_.expect(TokenKind::identifier, "S-state name");
        std::string id = name.text;
        SourcePos pos = name.pos;
        ts_.expect_punct(":");
        Formula label = formula_of(ts_.expect(TokenKind::string, "constraint string"));
        bool init = ts_.accept_word("init");
        ts_.expect_punct(";");
        at(pos, [&] { b_.sstate(id, label, init); });
        has_init = has_init || init;
      } else {
        in_transitions = true;
        const Token& from = ts_.expect(TokenKind::identifier, "'state' or an S-transition");
        SourcePos pos = from.pos;
        std::string a = from.text;
        ts_.expect_punct("-");
        ts_.expect_punct("[");
        Formula inv = formula_of(ts_.expect(TokenKind::string, "invariant string"));
        ts_.expect_punct("]");
        ts_.expect_punct("->");
        std::string b = ts_.expect(TokenKind::identifier, "S-state name").text;
        ts_.expect_punct(";");
        at(pos, [&] { b_.stransition(a, inv, b); });
      }
    }
    SourcePos close = ts_.next().pos;
    if (!has_init) {
      throw ParseError(close, "structure block starting at line " + std::to_string(block.line) + " has no init state");
    }
  }

  TokenStream ts_;
  SystemBuilder b_;
};

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  return out + "\"";
}

void block(std::ostream& os, std::string_view head, const std::vector<std::string>& entries) {
  os << head << " {";
  if (entries.empty()) {
    os << " }\n";
  } else if (entries.size() == 1) {
    os << " " << entries.front() << " }\n";
  } else {
    os << "\n";
    for (const auto& e : entries) {
      os << "  " << e << "\n";
    }
    os << "}\n";
  }
}

} // namespace

SBSystem load_text(std::string_view text) { return ModelParser(text).parse(); }

SBSystem load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_text(buf.str());
}

std::string save(const SBSystem& sys) {
  std::ostringstream os;
  os << "system " << quote_string(sys.name()) << "\n";

  std::vector<std::string> entries;
  for (const auto& d : sys.observables()) {
    entries.push_back(d.name + " : " + d.domain.to_string() + ";");
  }
  block(os, "observables", entries);

  entries.clear();
  const auto& b = sys.behaviour();
  for (BState q = 0; q < b.states.size(); ++q) {
    std::string e = "state " + b.states[q] + " {";
    const Valuation& v = sys.observation().table[q];
    for (std::size_t i = 0; i < v.size(); ++i) {
      e += (i ? ", " : " ") + sys.observables()[i].name + " = " + sys.observables()[i].domain.format_value(v[i]);
    }
    e += v.size() ? " }" : "}";
    if (q == b.init) {
      e += " init";
    }
    entries.push_back(e + ";");
  }
  for (BState q = 0; q < b.states.size(); ++q) {
    for (BState t : b.successors[q]) {
      entries.push_back(b.states[q] + " -> " + b.states[t] + ";");
    }
  }
  block(os, "behaviour", entries);

  entries.clear();
  const auto& s = sys.structure();
  for (SState r = 0; r < s.states.size(); ++r) {
    std::string e = "state " + s.states[r] + " : " + quote_string(to_string(s.labels[r]));
    if (r == s.init) {
      e += " init";
    }
    entries.push_back(e + ";");
  }
  for (const auto& t : s.transitions) {
    entries.push_back(s.states[t.from] + " -[" + quote_string(to_string(s.invariants[t.invariant])) + "]-> " +
                      s.states[t.to] + ";");
  }
  block(os, "structure", entries);
  return os.str();
}

} // namespace sbcheck
