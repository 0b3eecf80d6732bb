#include "doctest.h"
#include "oracles.hpp"
#include "stepauto/error.hpp"
#include "stepauto/expr.hpp"
#include "stepauto/language.hpp"

using namespace stepauto;

namespace {

Pomset P(const char* text) { return parse_pomset(text); }

PomsetLanguage L(std::initializer_list<const char*> members, std::size_t bound) {
  PomsetLanguage l(bound);
  for (const char* m : members) l.insert(P(m));
  return l;
}

}  // namespace

TEST_CASE("union") {
  CHECK(lang_union(L({"a"}, 3), L({"b"}, 3)) == L({"a", "b"}, 3));
  PomsetLanguage l = L({"a", "a.b", "a||b"}, 3);
  CHECK(lang_union(l, PomsetLanguage::empty(3)) == l);
  CHECK(lang_union(l, l) == l);
  CHECK_THROWS_AS(lang_union(L({"a"}, 2), L({"a"}, 3)), DomainError);
  PomsetLanguage inexact(3, false);
  CHECK_FALSE(lang_union(l, inexact).exact());
}

TEST_CASE("sequential product") {
  CHECK(lang_seq(L({"a"}, 3), L({"b"}, 3)) == L({"a.b"}, 3));
  PomsetLanguage l = L({"a", "b.c", "a||b"}, 3);
  CHECK(lang_seq(PomsetLanguage::empty(3), l).empty());
  CHECK(lang_seq(PomsetLanguage::unit(3), l) == l);
  // Products beyond the bound are dropped.
  CHECK(lang_seq(L({"a.b"}, 3), L({"c.d"}, 3)).empty());
  CHECK_THROWS_AS(lang_seq(L({"a"}, 2), L({"a"}, 3)), DomainError);
}

TEST_CASE("parallel product") {
  CHECK(lang_par(L({"a"}, 2), L({"b"}, 2)) == L({"a||b"}, 2));
  PomsetLanguage l = L({"a", "b.c"}, 3);
  PomsetLanguage k = L({"c", "a||b"}, 3);
  CHECK(lang_par(PomsetLanguage::unit(3), l) == l);
  CHECK(lang_par(l, k) == lang_par(k, l));
}

TEST_CASE("stars") {
  CHECK(lang_star(L({"a"}, 2)) == L({"1", "a", "a.a"}, 2));
  CHECK(lang_star(PomsetLanguage::empty(3)) == L({"1"}, 3));
  CHECK(lang_star(L({"1"}, 3)) == L({"1"}, 3));
  CHECK(lang_parstar(L({"a"}, 2)) == L({"1", "a", "a||a"}, 2));
  CHECK(lang_parstar(PomsetLanguage::empty(3)) == L({"1"}, 3));
  PomsetLanguage ab = lang_parstar(L({"a", "b"}, 2));
  CHECK(ab == L({"1", "a", "b", "a||a", "b||b", "a||b"}, 2));
  CHECK(ab.size() == 6);
  // A unit member does not stop the iteration early.
  CHECK(lang_star(L({"1", "a"}, 3)) == L({"1", "a", "a.a", "a.a.a"}, 3));
}

TEST_CASE("substitution") {
  Substitution zeta;
  zeta['a'] = L({"b"}, 3);
  CHECK(lang_substitute(zeta, L({"a.a"}, 3)) == L({"b.b"}, 3));

  PomsetLanguage l = L({"a.(b||c)", "c", "a||b.c"}, 4);
  Substitution id;
  for (char c : std::string("abc")) id[c] = L({std::string(1, c).c_str()}, 4);
  CHECK(lang_substitute(id, l) == l);

  Substitution erase;
  erase['a'] = L({"1"}, 3);
  erase['c'] = L({"c"}, 3);
  PomsetLanguage r = lang_substitute(erase, L({"a||c"}, 3));
  CHECK(r == L({"c"}, 3));
  CHECK_FALSE(r.exact());

  Substitution grow;
  grow['a'] = L({"b||c", "d"}, 4);
  CHECK(lang_substitute(grow, L({"a.a"}, 4)) == L({"(b||c).(b||c)", "(b||c).d", "d.(b||c)", "d.d"}, 4));

  CHECK_THROWS_AS(lang_substitute(zeta, L({"c"}, 3)), DomainError);
}

TEST_CASE("bounded semantics match the membership oracle up to 4 nodes") {
  const auto universe = oracle::all_pomsets_upto(4, "abc");
  for (const std::string& text : oracle::corpus()) {
    Expr x = parse_expr(text);
    PomsetLanguage l = semantics(x, 4);
    for (const Pomset& p : l) REQUIRE(p.size() <= 4);
    for (const Pomset& p : universe) {
      if (oracle::member(x, p.poset()) != l.contains(p)) {
        FAIL_CHECK(text << " disagrees on " << p.to_string());
      }
    }
  }
}

TEST_CASE("bounded semantics are monotone in the bound") {
  for (const std::string& text : oracle::corpus()) {
    Expr x = parse_expr(text);
    PomsetLanguage big = semantics(x, 5);
    for (std::size_t s = 0; s <= 5; ++s) {
      CHECK(semantics(x, s).members() == big.truncated(s).members());
    }
  }
}
