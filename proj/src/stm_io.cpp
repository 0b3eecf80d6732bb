#include "json.hpp"
#include "stepauto/error.hpp"
#include "stepauto/stm.hpp"

namespace stepauto {

using json = nlohmann::ordered_json;

namespace {

std::string symbol_name(char c) { return c == kBlank ? "eps" : std::string(1, c); }

char symbol_of(const json& v) {
  if (!v.is_string()) throw FormatError("tape symbols must be strings");
  std::string s = v.get<std::string>();
  if (s == "0" || s == "1") return s[0];
  if (s == "eps" || s == "blank") return kBlank;
  throw FormatError("invalid tape symbol '" + s + "'");
}

json vector_json(const std::string& v) {
  json out = json::array();
  for (char c : v) out.push_back(symbol_name(c));
  return out;
}

std::string vector_of(const json& v) {
  if (!v.is_array()) throw FormatError("column vectors must be arrays");
  std::string out;
  for (const json& s : v) out.push_back(symbol_of(s));
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw FormatError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string text_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t row_field(const json& j) {
  const json& v = field(j, "cell_row");
  if (!v.is_number_integer() || v.get<long>() < 1) {
    throw FormatError("'cell_row' must be a positive integer");
  }
  return v.get<std::size_t>();
}

const json& array_field(const json& j, const char* key) {
  static const json empty = json::array();
  if (!j.contains(key)) return empty;
  const json& v = j.at(key);
  if (!v.is_array()) throw FormatError(std::string("'") + key + "' must be an array");
  return v;
}

}  // namespace

std::string stm_to_json(const Stm& m) {
  json j;
  j["states"] = m.states;
  j["initial"] = m.initial;
  j["finals"] = std::vector<std::string>(m.finals.begin(), m.finals.end());
  j["k"] = m.k;
  j["delta"] = json::array();
  for (const StmReadRule& r : m.delta) {
    j["delta"].push_back(
        {{"from", r.from}, {"read", symbol_name(r.read)}, {"cell_row", r.cell_row}, {"to", r.to}});
  }
  j["gamma"] = json::array();
  for (const StmWriteRule& r : m.gamma) {
    j["gamma"].push_back({{"from", r.from}, {"cell_row", r.cell_row}, {"to", r.to}});
  }
  j["eta"] = json::array();
  for (const StmStepRule& r : m.eta) {
    json step = json::array();
    for (char c : r.step.letters()) step.push_back(std::string(1, c));
    j["eta"].push_back({{"from", r.from},
                        {"step", step},
                        {"read", vector_json(r.read)},
                        {"write", vector_json(r.write)},
                        {"move", r.move == Move::Left ? "L" : "R"},
                        {"to", r.to}});
  }
  return j.dump(2) + "\n";
}

Stm stm_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed machine file: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("machine file must be an object");
  Stm m;
  try {
    for (const json& s : array_field(j, "states")) m.states.push_back(s.get<std::string>());
    m.initial = text_field(j, "initial");
    for (const json& s : array_field(j, "finals")) m.finals.insert(s.get<std::string>());
    const json& k = field(j, "k");
    if (!k.is_number_integer() || k.get<long>() < 1) throw FormatError("'k' must be a positive integer");
    m.k = k.get<std::size_t>();
  } catch (const json::type_error& e) {
    throw FormatError(std::string("malformed machine file: ") + e.what());
  }
  for (const json& r : array_field(j, "delta")) {
    m.delta.push_back({text_field(r, "from"), symbol_of(field(r, "read")), row_field(r),
                       text_field(r, "to")});
  }
  for (const json& r : array_field(j, "gamma")) {
    m.gamma.push_back({text_field(r, "from"), row_field(r), text_field(r, "to")});
  }
  for (const json& r : array_field(j, "eta")) {
    const json& step = field(r, "step");
    if (!step.is_array()) throw FormatError("'step' must be an array");
    std::string letters;
    for (const json& l : step) {
      if (!l.is_string() || l.get<std::string>().size() != 1) {
        throw FormatError("step letters must be one-character strings");
      }
      letters += l.get<std::string>();
    }
    std::string move = text_field(r, "move");
    if (move != "L" && move != "R") throw FormatError("move must be \"L\" or \"R\"");
    m.eta.push_back({text_field(r, "from"), Step(letters), vector_of(field(r, "read")),
                     vector_of(field(r, "write")), move == "L" ? Move::Left : Move::Right,
                     text_field(r, "to")});
  }
  m.validate();
  return m;
}

}  // namespace stepauto
