#include "stepauto/stm.hpp"

namespace stepauto::machines {

ClassicalTm increment_tm() {
  ClassicalTm tm;
  tm.states = {"s0", "scan", "carry", "fix", "back", "halt"};
  tm.initial = "s0";
  tm.accepting = {"halt"};
  tm.rules = {
      {"s0", '_', "scan", '_', 'R'},
      {"scan", '0', "scan", '0', 'R'},
      {"scan", '1', "scan", '1', 'R'},
      {"scan", '_', "carry", '_', 'L'},
      {"carry", '1', "carry", '0', 'L'},
      {"carry", '0', "back", '1', 'L'},
      {"carry", '_', "fix", '1', 'L'},
      {"fix", '_', "halt", '_', 'R'},
      {"back", '0', "back", '0', 'L'},
      {"back", '1', "back", '1', 'L'},
      {"back", '_', "halt", '_', 'R'},
  };
  return tm;
}

ClassicalTm identity_tm() {
  ClassicalTm tm;
  tm.states = {"s0", "halt"};
  tm.initial = "s0";
  tm.accepting = {"halt"};
  tm.rules = {{"s0", '_', "halt", '_', 'R'}};
  return tm;
}

ClassicalTm parity_tm() {
  ClassicalTm tm;
  tm.states = {"s0", "even", "odd", "rewind", "halt"};
  tm.initial = "s0";
  tm.accepting = {"halt"};
  tm.rules = {
      {"s0", '_', "even", '_', 'R'},
      {"even", '0', "even", '0', 'R'},
      {"even", '1', "odd", '1', 'R'},
      {"odd", '0', "odd", '0', 'R'},
      {"odd", '1', "even", '1', 'R'},
      {"even", '_', "rewind", '_', 'L'},
      {"rewind", '0', "rewind", '0', 'L'},
      {"rewind", '1', "rewind", '1', 'L'},
      {"rewind", '_', "halt", '_', 'R'},
  };
  return tm;
}

ClassicalTm halting_tm() {
  ClassicalTm tm;
  tm.states = {"halt"};
  tm.initial = "halt";
  tm.accepting = {"halt"};
  return tm;
}

Stm copy_machine() {
  Stm m;
  m.states = {"start", "read", "emit", "done"};
  m.initial = "start";
  m.finals = {"done"};
  m.k = 1;
  m.delta = {
      {"start", kBlank, 1, "read"},
      {"read", '0', 1, "emit"},
      {"read", '1', 1, "emit"},
      {"read", kBlank, 1, "done"},
  };
  m.gamma = {{"emit", 1, "read"}};
  m.validate();
  return m;
}

Stm fork_join_machine() {
  Stm m;
  m.states = {"q0", "q1", "q2", "q3"};
  m.initial = "q0";
  m.finals = {"q3"};
  m.k = 1;
  const std::string e(1, kBlank);
  m.eta = {
      {"q0", Step{'a'}, e, e, Move::Right, "q1"},
      {"q1", Step{'b', 'c'}, e, e, Move::Right, "q2"},
      {"q2", Step{'d'}, e, e, Move::Right, "q3"},
  };
  m.validate();
  return m;
}

namespace {

std::vector<std::string> full_columns(std::size_t k) {
  std::vector<std::string> out{""};
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::string> next;
    for (const std::string& v : out) {
      next.push_back(v + '0');
      next.push_back(v + '1');
    }
    out = std::move(next);
  }
  return out;
}

std::string negated(std::string v) {
  for (char& c : v) c = c == '0' ? '1' : '0';
  return v;
}

}  // namespace

Stm not_machine(std::size_t k) {
  Stm m;
  m.k = k;
  m.initial = "load_start";
  m.finals = {"done"};
  m.states = {"load_start"};
  for (std::size_t r = 1; r <= k; ++r) m.states.push_back("load_" + std::to_string(r));
  for (const char* s : {"load_mv", "rewind_start", "rewind", "pass", "back"}) m.states.push_back(s);
  for (std::size_t r = 1; r <= k; ++r) m.states.push_back("emit_" + std::to_string(r));
  m.states.push_back("emit_mv");
  m.states.push_back("done");

  const std::string blank(k, kBlank);
  const std::vector<std::string> columns = full_columns(k);
  auto move = [&](const std::string& from, const std::string& v, Move mv, const std::string& to) {
    m.eta.push_back({from, Step(), v, v, mv, to});
  };

  // Load: k input symbols per column, top row first.
  m.delta.push_back({"load_start", kBlank, 1, "load_1"});
  for (std::size_t r = 1; r <= k; ++r) {
    std::string from = "load_" + std::to_string(r);
    std::string to = r < k ? "load_" + std::to_string(r + 1) : "load_mv";
    m.delta.push_back({from, '0', r, to});
    m.delta.push_back({from, '1', r, to});
  }
  m.delta.push_back({"load_1", kBlank, 1, "rewind_start"});
  for (const std::string& v : columns) move("load_mv", v, Move::Right, "load_1");

  move("rewind_start", blank, Move::Left, "rewind");
  for (const std::string& v : columns) move("rewind", v, Move::Left, "rewind");
  move("rewind", blank, Move::Right, "pass");

  // The negation pass: one step per column, acting on all rows at once.
  const Step negate(std::string(k, 'n'));
  for (const std::string& v : columns) {
    m.eta.push_back({"pass", negate, v, negated(v), Move::Right, "pass"});
  }
  move("pass", blank, Move::Left, "back");
  for (const std::string& v : columns) move("back", v, Move::Left, "back");
  move("back", blank, Move::Right, "emit_1");

  // Emit column by column, top row first.
  for (std::size_t r = 1; r <= k; ++r) {
    std::string from = "emit_" + std::to_string(r);
    m.gamma.push_back({from, r, r < k ? "emit_" + std::to_string(r + 1) : "emit_mv"});
  }
  move("emit_1", blank, Move::Right, "done");
  for (const std::string& v : columns) move("emit_mv", v, Move::Right, "emit_1");
  m.validate();
  return m;
}

}  // namespace stepauto::machines
