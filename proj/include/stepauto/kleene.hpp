#pragma once

// Both directions between expressions and step automata.
//
// Expression to automaton: the syntactic automaton whose states are
// expressions and whose transitions are step derivatives. Parallel
// composition is read synchronously: a step of x||y is the union of one
// initial step of each side, where a nullable side may instead stay idle.
// A step of x^* fires between 1 and W copies of x at once.
//
// Automaton to expression: least solutions of the associated linear system
// by state elimination with Arden's rule.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stepauto/automaton.hpp"
#include "stepauto/expr.hpp"

namespace stepauto {

inline constexpr std::size_t kDefaultWidth = 8;

using ExprSet = std::set<Expr>;
using DerivativeTable = std::map<Step, ExprSet>;

/// {x'.y : x' in s}, with 0 absorption and 1 as unit.
ExprSet seq_after(const ExprSet& s, const Expr& y);

/// s when x is nullable, the empty set otherwise.
ExprSet guard(const Expr& x, const ExprSet& s);

/// Letter derivatives; empty for parallel compositions and parallel stars.
ExprSet delta_spr(const Expr& x, Letter a);

/// Memoizing step-derivative engine with parallel-star width cap W.
class Deriver {
 public:
  explicit Deriver(std::size_t width = kDefaultWidth);

  std::size_t width() const noexcept { return width_; }

  /// All (step, derivatives) pairs of x.
  const DerivativeTable& table(const Expr& x);
  ExprSet gamma(const Expr& x, const Step& u);
  std::set<Step> initial_steps(const Expr& x);

  /// Parallel stars whose copy count was limited by the width cap.
  const ExprSet& capped() const noexcept { return capped_; }

 private:
  DerivativeTable compute(const Expr& x);
  DerivativeTable par_table(const Expr& x);
  DerivativeTable parstar_table(const Expr& x);

  std::size_t width_;
  std::map<std::string, DerivativeTable> memo_;
  ExprSet capped_;
};

ExprSet gamma_spr(const Expr& x, const Step& u, std::size_t width = kDefaultWidth);
std::set<Step> initial_steps(const Expr& x, std::size_t width = kDefaultWidth);

/// x together with the structurally reachable expressions; parallel stars
/// contribute pending-copy compositions of up to W copies.
ExprSet reachable(const Expr& x, std::size_t width = kDefaultWidth);

struct CompileResult {
  StepAutomaton automaton;
  /// State standing for the compiled expression (its text).
  std::string initial;
  bool well_nested = false;
  std::size_t width = kDefaultWidth;
  /// Parallel stars whose step enumeration was limited by the width cap.
  std::vector<Expr> capped;

  bool cap_reached() const { return !capped.empty(); }
};

/// Explores the syntactic automaton from x. States are named by expression
/// text; final states are the nullable ones.
CompileResult compile(const Expr& x, std::size_t width = kDefaultWidth);

struct SprSystem {
  std::vector<std::string> states;
  /// Absent entries stand for 0.
  std::map<std::pair<std::string, std::string>, Expr> m;
  std::map<std::string, Expr> b;

  Expr coefficient(const std::string& q, const std::string& r) const;
  Expr constant(const std::string& q) const;
};

/// M(q, r) sums the letters and step expressions labelling q -> r; a step
/// <a,b> becomes a||b. b(q) is 1 on final states and 0 elsewhere.
SprSystem sa_to_system(const StepAutomaton& a);

/// Solves s(q) = b(q) + sum_r M(q, r).s(r) by state elimination, strongly
/// connected components first from the sinks, Arden's rule on self loops.
std::map<std::string, Expr> least_solution(const SprSystem& sys);

Expr extract(const StepAutomaton& a, const std::string& q);

}  // namespace stepauto
