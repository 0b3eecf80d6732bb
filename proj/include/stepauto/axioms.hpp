#pragma once

// Bounded checking of the concurrent Kleene algebra axioms.
//
// Axioms are templates over the variables x, y, z, h. An instance binds each
// variable to an expression; the axiom is then checked as an identity (or a
// containment) between bounded languages.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stepauto/expr.hpp"

namespace stepauto {

enum class AxiomKind {
  Equation,     // lhs = rhs
  Containment,  // lhs <= rhs
  Conditional,  // premise_lhs <= premise_rhs  implies  lhs <= rhs
};

struct Axiom {
  std::string id;
  AxiomKind kind;
  Expr lhs;
  Expr rhs;
  Expr premise_lhs;
  Expr premise_rhs;
  std::vector<Letter> variables;
};

/// The 28 axioms, A1..A15 and P1..P13, in table order.
const std::vector<Axiom>& axiom_table();
const Axiom& find_axiom(const std::string& id);

using Env = std::map<Letter, Expr>;

struct Counterexample {
  Env env;
  Pomset witness;
  /// Which side the witness belongs to, e.g. "lhs only".
  std::string where;
};

enum class AxiomStatus { Holds, Fails };

struct AxiomReport {
  std::string id;
  std::size_t instances_checked = 0;
  /// Conditional axioms: instances whose premise did not hold.
  std::size_t vacuous = 0;
  AxiomStatus status = AxiomStatus::Holds;
  std::optional<Counterexample> counterexample;
  /// Containment axioms only: every left-hand member is subsumed by (is at
  /// least as ordered as) some right-hand member, on every instance.
  bool holds_up_to_subsumption = true;

  bool holds() const { return status == AxiomStatus::Holds; }
};

/// Checks a single instance. Never throws on a failing instance; the failure
/// is reported with a witness.
AxiomReport check_axiom(const std::string& id, const Env& env, std::size_t bound,
                        Interpretation interp = Interpretation::Standard);

struct AxiomSuiteConfig {
  std::size_t bound = 4;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  Interpretation interp = Interpretation::Standard;
};

/// Random instances for every axiom. Conditional axioms additionally receive
/// a premise-satisfying instance per sample, built from the random one.
std::vector<AxiomReport> run_axiom_suite(const AxiomSuiteConfig& config);

struct ExprGenConfig {
  std::size_t max_depth = 5;
  std::string alphabet = "abcd";
  double star_probability = 0.2;
};

/// Seeded random expression generator.
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed, ExprGenConfig config = {})
      : rng_(seed), config_(std::move(config)) {}

  Expr next();
  Expr next(std::size_t depth);

 private:
  std::size_t pick(std::size_t n);
  double unit();

  std::mt19937_64 rng_;
  ExprGenConfig config_;
};

std::string to_string(const Env& env);

}  // namespace stepauto
