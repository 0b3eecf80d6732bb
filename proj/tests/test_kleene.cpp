#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stepauto/axioms.hpp"
#include "stepauto/kleene.hpp"

using namespace stepauto;

namespace {

Expr E(const char* text) { return parse_expr(text); }
StepWord W(const char* text) { return parse_step_word(text); }

std::set<std::string> texts(const ExprSet& s) {
  std::set<std::string> out;
  for (const Expr& x : s) out.insert(x.text());
  return out;
}

std::set<StepWord> words(const Expr& x, std::size_t len, std::size_t width = 3) {
  CompileResult c = compile(x, width);
  return language_upto(c.automaton, c.initial, len);
}

std::set<StepWord> concat(const std::set<StepWord>& l, const std::set<StepWord>& r,
                          std::size_t len) {
  std::set<StepWord> out;
  for (const StepWord& u : l) {
    for (const StepWord& v : r) {
      if (u.size() + v.size() > len) continue;
      StepWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.insert(w);
    }
  }
  return out;
}

std::size_t letter_count(const StepWord& w) {
  std::size_t n = 0;
  for (const Step& u : w) n += u.size();
  return n;
}

}  // namespace

TEST_CASE("sequential continuation and guards") {
  CHECK(texts(seq_after({E("1")}, E("b"))) == std::set<std::string>{"b"});
  CHECK(seq_after({}, E("b")).empty());
  CHECK(texts(seq_after({E("a"), E("1")}, E("b"))) == std::set<std::string>{"a.b", "b"});
  CHECK(texts(guard(E("1"), {E("a")})) == std::set<std::string>{"a"});
  CHECK(guard(E("a"), {E("b")}).empty());
  CHECK(texts(guard(E("a*"), {E("b"), E("c")})) == std::set<std::string>{"b", "c"});
}

TEST_CASE("letter derivatives") {
  CHECK(texts(delta_spr(E("a"), 'a')) == std::set<std::string>{"1"});
  CHECK(delta_spr(E("a"), 'b').empty());
  CHECK(texts(delta_spr(E("a*"), 'a')) == std::set<std::string>{"a*"});
  CHECK(delta_spr(E("a||b"), 'a').empty());
  CHECK(delta_spr(E("a^*"), 'a').empty());
  CHECK(texts(delta_spr(E("a*.b"), 'b')) == std::set<std::string>{"1"});
  CHECK(texts(delta_spr(E("(a+b).c"), 'a')) == std::set<std::string>{"c"});
  CHECK(delta_spr(E("0"), 'a').empty());
  CHECK(delta_spr(E("1"), 'a').empty());
}

TEST_CASE("step derivatives") {
  CHECK(texts(gamma_spr(E("b||c"), Step("bc"))) == std::set<std::string>{"1"});
  CHECK(texts(gamma_spr(E("a||b.c"), Step("ab"))) == std::set<std::string>{"c"});
  CHECK(texts(gamma_spr(E("a^*"), Step("aa"))) == std::set<std::string>{"a^*"});
  CHECK(texts(gamma_spr(E("a"), Step{'a'})) == std::set<std::string>{"1"});
  CHECK(gamma_spr(E("b||c"), Step{'b'}).empty());
  // A nullable side may idle.
  CHECK(texts(gamma_spr(E("a||b*"), Step{'a'})) == std::set<std::string>{"b*"});
  CHECK(texts(gamma_spr(E("a||b*"), Step("ab"))) == std::set<std::string>{"b*"});
  // Both sides may not idle at once.
  CHECK(gamma_spr(E("a*||b*"), Step{'c'}).empty());
  CHECK(texts(gamma_spr(E("(a||b).c"), Step("ab"))) == std::set<std::string>{"c"});
  CHECK(texts(gamma_spr(E("(a.b)^*"), Step("aa"))) == std::set<std::string>{"(b||b).(a.b)^*"});
}

TEST_CASE("initial steps") {
  auto bc = initial_steps(E("b||c"));
  CHECK(bc.count(Step("bc")) == 1);
  CHECK(initial_steps(E("a")) == std::set<Step>{Step{'a'}});
  CHECK(initial_steps(E("0")).empty());
  CHECK(initial_steps(E("a^*"), 3) == std::set<Step>{Step("a"), Step("aa"), Step("aaa")});
  Deriver d(2);
  d.table(E("a^*"));
  CHECK(texts(d.capped()) == std::set<std::string>{"a^*"});
  Deriver none(2);
  none.table(E("a.b||c"));
  CHECK(none.capped().empty());
}

TEST_CASE("reachable sets") {
  CHECK(texts(reachable(E("a"))) == std::set<std::string>{"1", "a"});
  CHECK(texts(reachable(E("0"))) == std::set<std::string>{"0"});
  CHECK(texts(reachable(E("a.b"))) == std::set<std::string>{"1", "a", "a.b", "b"});
  ExprGenerator gen(31, ExprGenConfig{4, "abc", 0.2});
  for (int i = 0; i < 300; ++i) {
    Expr x = gen.next();
    REQUIRE(reachable(x, 2).count(x) == 1);
  }
}

TEST_CASE("compiling the fork-join expression") {
  CompileResult c = compile(E("a.(b||c).d"));
  CHECK(c.automaton.size() == 4);
  CHECK(c.initial == "a.(b||c).d");
  CHECK(c.well_nested);
  CHECK_FALSE(c.cap_reached());
  CHECK(language_upto(c.automaton, c.initial, 5) == std::set<StepWord>{W("a.<b,c>.d")});
  CHECK(c.automaton.finals() == std::set<std::string>{"1"});
}

TEST_CASE("compiling constants") {
  CompileResult zero = compile(E("0"));
  CHECK(zero.automaton.size() == 1);
  CHECK(zero.automaton.finals().empty());
  CHECK(language_upto(zero.automaton, zero.initial, 3).empty());
  CompileResult one = compile(E("1"));
  CHECK(one.automaton.size() == 1);
  CHECK(language_upto(one.automaton, one.initial, 3) == std::set<StepWord>{StepWord{}});
}

TEST_CASE("parallel stars report the width cap") {
  CompileResult c = compile(E("a^*"), 3);
  REQUIRE(c.cap_reached());
  CHECK(c.capped.front().text() == "a^*");
  CHECK(accepts(c.automaton, c.initial, W("<a,a,a>.a")));
  CHECK_FALSE(accepts(c.automaton, c.initial, W("<a,a,a,a>")));
}

TEST_CASE("systems and their least solutions") {
  StepAutomaton fig = compile(E("a.(b||c).d")).automaton;
  SprSystem sys = sa_to_system(fig);
  CHECK(sys.coefficient("a.(b||c).d", "(b||c).d").text() == "a");
  CHECK(sys.coefficient("(b||c).d", "d").text() == "b||c");
  CHECK(sys.coefficient("d", "1").text() == "d");
  CHECK(sys.coefficient("d", "a.(b||c).d").is_zero());
  CHECK(sys.constant("1").is_one());
  CHECK(sys.constant("d").is_zero());
  CHECK(extract(fig, "a.(b||c).d").text() == "a.((b||c).d)");

  StepAutomaton loop;
  loop.add_state("q0");
  loop.add_state("q1", true);
  loop.add_delta("q0", 'a', "q0");
  loop.add_delta("q0", 'b', "q1");
  SprSystem ls = sa_to_system(loop);
  CHECK(ls.coefficient("q0", "q0").text() == "a");
  Expr s = least_solution(ls).at("q0");
  CHECK(oracle::word_language(s, 5) == oracle::word_language(E("a*.b"), 5));

  StepAutomaton single;
  single.add_state("q", true);
  CHECK(sa_to_system(single).m.empty());
  CHECK(extract(single, "q").is_one());
}

TEST_CASE("extraction on random automata preserves the step-word language") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    StepAutomaton a = oracle::random_automaton(rng, 1 + rng() % 5, "ab");
    Expr x = extract(a, "q0");
    REQUIRE(words(x, 4) == language_upto(a, "q0", 4));
  }
}

TEST_CASE("round trip over the corpus") {
  for (const std::string& t : oracle::corpus()) {
    INFO(t);
    CompileResult c = compile(parse_expr(t), 3);
    Expr back = extract(c.automaton, c.initial);
    CHECK(words(back, 4) == language_upto(c.automaton, c.initial, 4));
  }
}

TEST_CASE("par-free expressions agree with a classical word automaton") {
  ExprGenConfig cfg{4, "abc", 0.25};
  ExprGenerator gen(41, cfg);
  std::size_t checked = 0;
  std::vector<Expr> xs;
  for (const std::string& t : oracle::corpus()) xs.push_back(parse_expr(t));
  while (xs.size() < 400) xs.push_back(gen.next());
  for (const Expr& x : xs) {
    if (!is_par_free(x)) continue;
    ++checked;
    std::set<std::string> got;
    for (const StepWord& w : words(x, 5)) got.insert(oracle::as_plain_word(w));
    REQUIRE(got == oracle::word_language(x, 5));
  }
  CHECK(checked > 100);
}

TEST_CASE("support closure over the corpus") {
  for (const std::string& t : oracle::corpus()) {
    INFO(t);
    Expr x = parse_expr(t);
    CompileResult c = compile(x, 3);
    ExprSet r = reachable(x, 3);
    CHECK(r.count(x) == 1);
    std::set<std::string> names = texts(r);
    // Every compiled state is structurally reachable, and the set is closed.
    for (const std::string& q : c.automaton.states()) CHECK(names.count(q) == 1);
    std::set<std::string> inside;
    for (const std::string& n : names) {
      if (c.automaton.has_state(n)) inside.insert(n);
    }
    CHECK(is_support_closed(c.automaton, support(c.automaton, c.initial)));
    CHECK(support(c.automaton, c.initial) == inside);
  }
}

TEST_CASE("well-nestedness holds exactly for star-free expressions") {
  for (const std::string& t : oracle::corpus()) {
    INFO(t);
    Expr x = parse_expr(t);
    CompileResult c = compile(x, 3);
    CHECK(c.well_nested == is_well_nested(c.automaton));
    bool has_loop = false;
    for (const std::string& q : c.automaton.states()) {
      for (auto s : c.automaton.successors(c.automaton.index(q))) {
        if (support_leq(c.automaton, q, c.automaton.name(s))) has_loop = true;
      }
    }
    CHECK(c.well_nested == !has_loop);
    bool starred = t.find('*') != std::string::npos;
    // A star whose body can fire produces a self-reachable state.
    if (!starred) CHECK(c.well_nested);
  }
  CHECK_FALSE(compile(E("a*")).well_nested);
}

TEST_CASE("depth monotonicity") {
  std::vector<std::string> violations;
  for (const std::string& t : oracle::corpus()) {
    Expr x = parse_expr(t);
    for (const Expr& y : reachable(x, 3)) {
      CHECK(parstar_depth(y) <= parstar_depth(x));
      if (par_depth(y) > par_depth(x)) {
        // Only pending copies of a parallel star can raise the depth.
        CHECK(parstar_depth(x) > 0);
        violations.push_back(y.text());
      }
    }
  }
  CHECK(std::find(violations.begin(), violations.end(), "(b||b).(a.b)^*") != violations.end());
}

TEST_CASE("accepted words are subsumed by the bounded semantics") {
  for (const std::string& t : oracle::corpus()) {
    INFO(t);
    Expr x = parse_expr(t);
    CompileResult c = compile(x, 3);
    auto accepted = language_upto(c.automaton, c.initial, 4);
    std::size_t most = 0;
    for (const StepWord& w : accepted) most = std::max(most, letter_count(w));
    const PomsetLanguage lang = semantics(x, most);
    const auto layers = lang.by_size();
    for (const StepWord& w : accepted) {
      Pomset p = step_word_to_pomset(w);
      bool found = false;
      for (const Pomset* q : layers[letter_count(w)]) {
        if (subsumes(p, *q)) {
          found = true;
          break;
        }
      }
      CHECK_MESSAGE(found, to_string(w));
    }
  }
}

TEST_CASE("sum, product and star decompose on accepted words") {
  const std::vector<std::string> xs = {"a", "a.b", "a||b", "b*", "(a||b).c", "1", "a+b.c"};
  for (const std::string& s : xs) {
    for (const std::string& r : xs) {
      Expr x = parse_expr(s);
      Expr y = parse_expr(r);
      auto lx = words(x, 4);
      auto ly = words(y, 4);
      std::set<StepWord> u = lx;
      u.insert(ly.begin(), ly.end());
      CHECK(words(Expr::sum(x, y), 4) == u);
      CHECK(words(Expr::seq(x, y), 4) == concat(lx, ly, 4));
    }
    Expr x = parse_expr(s);
    std::set<StepWord> star{StepWord{}};
    for (int i = 0; i < 4; ++i) {
      auto more = concat(star, words(x, 4), 4);
      star.insert(more.begin(), more.end());
    }
    CHECK(words(Expr::star(x), 4) == star);
  }
}
