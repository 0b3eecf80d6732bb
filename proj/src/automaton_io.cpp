#include <algorithm>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "stepauto/automaton.hpp"
#include "stepauto/error.hpp"

namespace stepauto {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> state_order(const StepAutomaton& a,
                                     const std::optional<std::string>& initial) {
  std::vector<std::string> names = a.states();
  std::sort(names.begin(), names.end());
  if (initial) {
    a.index(*initial);
    names.erase(std::find(names.begin(), names.end(), *initial));
    names.insert(names.begin(), *initial);
  }
  return names;
}

struct Edge {
  std::string from;
  Step label;
  std::string to;
  bool letter;
};

std::vector<Edge> edges(const StepAutomaton& a) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [l, ts] : a.delta(i)) {
      for (auto t : ts) out.push_back({a.name(i), Step{l}, a.name(t), true});
    }
    for (const auto& [u, ts] : a.gamma(i)) {
      for (auto t : ts) out.push_back({a.name(i), u, a.name(t), false});
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& x, const Edge& y) {
    return std::forward_as_tuple(!x.letter, x.from, x.label, x.to) <
           std::forward_as_tuple(!y.letter, y.from, y.label, y.to);
  });
  return out;
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Letter letter_of(const json& v) {
  if (!v.is_string()) throw FormatError("letters must be strings");
  std::string s = v.get<std::string>();
  if (s.size() != 1 || s[0] < 'a' || s[0] > 'z') {
    throw FormatError("invalid letter '" + s + "'");
  }
  return s[0];
}

}  // namespace

std::string automaton_to_json(const StepAutomaton& a,
                              const std::optional<std::string>& initial) {
  json j;
  j["states"] = state_order(a, initial);
  std::set<std::string> finals = a.finals();
  j["finals"] = std::vector<std::string>(finals.begin(), finals.end());
  j["delta"] = json::array();
  j["gamma"] = json::array();
  for (const Edge& e : edges(a)) {
    if (e.letter) {
      j["delta"].push_back({{"from", e.from}, {"letter", e.label.letters()}, {"to", e.to}});
    } else {
      json step = json::array();
      for (char c : e.label.letters()) step.push_back(std::string(1, c));
      j["gamma"].push_back({{"from", e.from}, {"step", step}, {"to", e.to}});
    }
  }
  return j.dump(2) + "\n";
}

StepAutomaton automaton_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed automaton file: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("automaton file must be an object");
  StepAutomaton a;
  const json& states = field(j, "states");
  if (!states.is_array()) throw FormatError("'states' must be an array");
  for (const json& s : states) {
    if (!s.is_string()) throw FormatError("state names must be strings");
    std::string name = s.get<std::string>();
    if (a.has_state(name)) throw FormatError("duplicate state '" + name + "'");
    a.add_state(name);
  }
  auto known = [&](const std::string& name) {
    if (!a.has_state(name)) throw FormatError("unknown state '" + name + "'");
    return name;
  };
  const json& finals = field(j, "finals");
  if (!finals.is_array()) throw FormatError("'finals' must be an array");
  for (const json& f : finals) {
    if (!f.is_string()) throw FormatError("state names must be strings");
    a.set_final(known(f.get<std::string>()));
  }
  for (const char* key : {"delta", "gamma"}) {
    if (j.contains(key) && !j.at(key).is_array()) {
      throw FormatError(std::string("'") + key + "' must be an array");
    }
  }
  if (j.contains("delta")) {
    for (const json& d : j.at("delta")) {
      a.add_delta(known(string_field(d, "from")), letter_of(field(d, "letter")),
                  known(string_field(d, "to")));
    }
  }
  if (j.contains("gamma")) {
    for (const json& g : j.at("gamma")) {
      const json& step = field(g, "step");
      if (!step.is_array() || step.empty()) throw FormatError("'step' must be a nonempty array");
      std::string letters;
      for (const json& l : step) letters += letter_of(l);
      a.add_gamma(known(string_field(g, "from")), Step(letters), known(string_field(g, "to")));
    }
  }
  return a;
}

std::string automaton_to_dot(const StepAutomaton& a,
                             const std::optional<std::string>& initial) {
  std::ostringstream out;
  out << "digraph SA {\n  rankdir=LR;\n";
  if (initial) out << "  __start [shape=point];\n";
  for (const std::string& s : state_order(a, initial)) {
    out << "  " << dot_quote(s) << " [shape=" << (a.is_final(s) ? "doublecircle" : "circle")
        << "];\n";
  }
  if (initial) out << "  __start -> " << dot_quote(*initial) << ";\n";
  for (const Edge& e : edges(a)) {
    out << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to)
        << " [label=" << dot_quote(e.label.to_string()) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stepauto
