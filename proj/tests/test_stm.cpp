#include <random>

#include "doctest.h"
#include "stepauto/error.hpp"
#include "stepauto/stm.hpp"

using namespace stepauto;

namespace {

StepWord W(const char* text) { return parse_step_word(text); }

std::vector<std::string> binary_words(std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<std::string> next;
    for (const std::string& w : layer) {
      next.push_back(w + '0');
      next.push_back(w + '1');
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Stm one_rule_machine() {
  Stm m;
  m.states = {"q0", "q1"};
  m.initial = "q0";
  m.finals = {"q1"};
  m.eta = {{"q0", Step{'a'}, "_", "1", Move::Right, "q1"}};
  m.validate();
  return m;
}

std::string negate(std::string w) {
  for (char& c : w) c = c == '0' ? '1' : '0';
  return w;
}

}  // namespace

TEST_CASE("a step rule writes, moves and carries its label") {
  Stm m = one_rule_machine();
  auto next = successors(m, "", initial_config(m));
  REQUIRE(next.size() == 1);
  CHECK(next[0].label == Step{'a'});
  CHECK(next[0].config.head == 1);
  CHECK(next[0].config.planar == std::map<long, std::string>{{0, "1"}});
  CHECK(next[0].config.control == "q1");
  // Final configurations have no successors.
  CHECK(successors(m, "", next[0].config).empty());
}

TEST_CASE("an input rule copies the symbol and advances the input head") {
  Stm m = machines::copy_machine();
  StmConfig c = initial_config(m);
  auto s1 = successors(m, "101", c);
  REQUIRE(s1.size() == 1);
  CHECK_FALSE(s1[0].label.has_value());
  CHECK(s1[0].config.input_pos == 1);
  auto s2 = successors(m, "101", s1[0].config);
  REQUIRE(s2.size() == 1);
  CHECK(s2[0].config.planar == std::map<long, std::string>{{0, "1"}});
  CHECK(s2[0].config.input_pos == 2);
  CHECK(s2[0].config.head == 0);
  CHECK(render_config(m, "101", s1[0].config).find("□[1]01□") != std::string::npos);
}

TEST_CASE("copy machine") {
  Stm m = machines::copy_machine();
  StmOutcome o = run(m, "101");
  CHECK(o.status == StmStatus::Accepted);
  CHECK(o.output == "101");
  CHECK(o.word.empty());
  CHECK(o.max_frontier == 1);
  CHECK(accepted_words_upto(m, "101", 50) == std::set<StepWord>{StepWord{}});
  CHECK(run(m, "").output.empty());
  CHECK_THROWS_AS(run(m, "12"), DomainError);
}

TEST_CASE("step bound") {
  Stm m = machines::copy_machine();
  StmRunOptions none;
  none.max_steps = 0;
  CHECK(run(m, "1", none).status == StmStatus::BoundExceeded);
  StmRunOptions few;
  few.max_steps = 3;
  CHECK(run(m, "101", few).status == StmStatus::BoundExceeded);
  CHECK(to_string(StmStatus::BoundExceeded) == "bound_exceeded");
  CHECK(to_string(StmStatus::Accepted) == "accepted");
  CHECK(to_string(StmStatus::Rejected) == "rejected");
}

TEST_CASE("the fork-join control as step rules") {
  Stm m = machines::fork_join_machine();
  CHECK(accepted_words_upto(m, "", 10) == std::set<StepWord>{W("a.<b,c>.d")});
  StmOutcome o = run(m, "");
  CHECK(o.word == W("a.<b,c>.d"));
  // The empty input rule vector never touched the tape.
  CHECK(o.trace.back().config.planar.empty());
  CHECK(o.trace.back().config.head == 3);
}

TEST_CASE("unreachable finals") {
  Stm m;
  m.states = {"q0", "q1"};
  m.initial = "q0";
  m.finals = {"q1"};
  m.eta = {{"q0", Step{'a'}, "1", "1", Move::Right, "q1"}};
  CHECK(accepted_words_upto(m, "", 20).empty());
  CHECK(run(m, "").status == StmStatus::Rejected);
}

TEST_CASE("validation") {
  Stm m = one_rule_machine();
  m.eta[0].read = "__";
  CHECK_THROWS_AS(m.validate(), FormatError);
  m = one_rule_machine();
  m.eta.push_back({"q1", Step{'a'}, "_", "_", Move::Left, "q0"});
  CHECK_THROWS_AS(m.validate(), FormatError);
  m = one_rule_machine();
  m.delta.push_back({"q0", '0', 2, "q1"});
  CHECK_THROWS_AS(m.validate(), FormatError);
  m = one_rule_machine();
  m.initial = "zz";
  CHECK_THROWS_AS(m.validate(), FormatError);
}

TEST_CASE("classical machines") {
  CHECK(run_tm(machines::increment_tm(), "1011", 10000).output == "1100");
  CHECK(run_tm(machines::increment_tm(), "111", 10000).output == "1000");
  CHECK(run_tm(machines::increment_tm(), "", 10000).output == "1");
  CHECK(run_tm(machines::identity_tm(), "0110", 10000).output == "0110");
  CHECK(run_tm(machines::parity_tm(), "11", 10000).status == StmStatus::Accepted);
  CHECK(run_tm(machines::parity_tm(), "10", 10000).status == StmStatus::Rejected);
  TmOutcome h = run_tm(machines::halting_tm(), "101", 10000);
  CHECK(h.status == StmStatus::Accepted);
  CHECK(h.output.empty());
  CHECK(run_tm(machines::increment_tm(), "1011", 2).status == StmStatus::BoundExceeded);
}

TEST_CASE("embedding agrees with the classical simulator on inputs up to length 8") {
  for (const ClassicalTm& tm :
       {machines::increment_tm(), machines::identity_tm(), machines::parity_tm()}) {
    Stm m = from_classical_tm(tm);
    for (const std::string& w : binary_words(8)) {
      TmOutcome expect = run_tm(tm, w, 10000);
      StmOutcome got = run(m, w);
      REQUIRE(got.status == expect.status);
      REQUIRE(got.output == expect.output);
      for (char c : got.output) REQUIRE((c == '0' || c == '1'));
      REQUIRE(got.max_frontier == 1);
    }
  }
  CHECK(run(from_classical_tm(machines::increment_tm()), "0111").output == "1000");
  StmOutcome h = run(from_classical_tm(machines::halting_tm()), "101");
  CHECK(h.status == StmStatus::Accepted);
  CHECK(h.output.empty());
  // Each classical rule becomes one <t> step.
  CHECK(count_steps_with(run(from_classical_tm(machines::identity_tm()), "01").word, 't') == 1);
}

TEST_CASE("unsupported classical features") {
  ClassicalTm stay = machines::identity_tm();
  stay.rules[0].move = 'S';
  CHECK_THROWS_AS(from_classical_tm(stay), DomainError);
  ClassicalTm busy = machines::identity_tm();
  busy.rules.push_back({"halt", '0', "halt", '0', 'R'});
  CHECK_THROWS_AS(from_classical_tm(busy), DomainError);
}

TEST_CASE("deduplication never changes the accepted words") {
  std::vector<Stm> ms = {machines::copy_machine(), machines::fork_join_machine(),
                         machines::not_machine(1), machines::not_machine(2)};
  // A nondeterministic machine: guess a letter per blank column, twice.
  Stm guess;
  guess.states = {"q0", "q1", "q2"};
  guess.initial = "q0";
  guess.finals = {"q2"};
  guess.eta = {{"q0", Step{'a'}, "_", "_", Move::Right, "q1"},
               {"q0", Step{'b'}, "_", "1", Move::Left, "q1"},
               {"q1", Step{'a'}, "_", "_", Move::Left, "q2"},
               {"q1", Step{'c'}, "_", "_", Move::Right, "q0"}};
  guess.validate();
  ms.push_back(guess);
  for (const Stm& m : ms) {
    for (const char* w : {"", "1", "01", "0110"}) {
      REQUIRE(accepted_words_upto(m, w, 14, true) == accepted_words_upto(m, w, 14, false));
    }
  }
  CHECK(accepted_words_upto(guess, "", 4).count(W("a.a")) == 1);
  CHECK(accepted_words_upto(guess, "", 4).count(W("a.c.a.a")) == 1);
  // After b the column holds a 1, which q0 cannot read on the way back.
  CHECK(accepted_words_upto(guess, "", 4).count(W("b.c.a.a")) == 0);
}

TEST_CASE("bitwise NOT uses one step per column") {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::string w;
    for (std::size_t i = 0; i < 4 * n; ++i) w.push_back(rng() % 2 ? '1' : '0');
    StmOutcome wide = run(machines::not_machine(4), w);
    StmOutcome narrow = run(machines::not_machine(1), w);
    REQUIRE(wide.status == StmStatus::Accepted);
    REQUIRE(narrow.status == StmStatus::Accepted);
    CHECK(wide.output == negate(w));
    CHECK(narrow.output == negate(w));
    CHECK(count_steps_with(wide.word, 'n') == n);
    CHECK(count_steps_with(narrow.word, 'n') == 4 * n);
    CHECK(wide.word.size() == n);
    CHECK(wide.word.front() == Step("nnnn"));
  }
  CHECK(run(machines::not_machine(4), "101").status == StmStatus::Rejected);
  CHECK(run(machines::not_machine(2), "").output.empty());
}

TEST_CASE("trace rendering") {
  Stm m = machines::copy_machine();
  StmOutcome o = run(m, "101");
  std::string t = render_trace(m, "101", o.trace);
  CHECK(t.rfind("step 0\n  state   start\n  input   [□]101□\n  output  [□]\n  planar  □[□]□\n", 0) == 0);
  CHECK(t.find("step 1 by 1\n  state   read\n  input   □[1]01□\n") != std::string::npos);
  CHECK(t.find("  output  □101[□]\n") != std::string::npos);
  std::string r = render_config(machines::not_machine(2), "0110",
                                initial_config(machines::not_machine(2)));
  CHECK(r.find("  row 1   □[□]□\n  row 2   □[□]□\n") != std::string::npos);
  Stm f = machines::fork_join_machine();
  CHECK(render_trace(f, "", run(f, "").trace).find("step 2 by <b,c>\n") != std::string::npos);
}

TEST_CASE("machine files round-trip") {
  for (const Stm& m : {machines::copy_machine(), machines::not_machine(3),
                       from_classical_tm(machines::increment_tm())}) {
    std::string text = stm_to_json(m);
    CHECK(stm_to_json(stm_from_json(text)) == text);
  }
  CHECK_THROWS_AS(stm_from_json("{"), FormatError);
  CHECK_THROWS_AS(stm_from_json(R"({"states": ["q"], "initial": "q", "finals": [], "k": 0})"),
                  FormatError);
  CHECK_THROWS_AS(stm_from_json(R"({"states": ["q"], "initial": "q", "finals": [], "k": 1,
      "eta": [{"from": "q", "step": ["a"], "read": ["2"], "write": ["0"], "move": "R", "to": "q"}]})"),
                  FormatError);
  CHECK_THROWS_AS(stm_from_json(R"({"states": ["q"], "initial": "q", "finals": [], "k": 1,
      "eta": [{"from": "q", "step": ["a"], "read": ["0"], "write": ["0"], "move": "S", "to": "q"}]})"),
                  FormatError);
  Stm b = stm_from_json(R"({"states": ["q", "r"], "initial": "q", "finals": ["r"], "k": 1,
      "eta": [{"from": "q", "step": ["a"], "read": ["blank"], "write": ["eps"], "move": "R", "to": "r"}]})");
  CHECK(b.eta[0].read == "_");
}
