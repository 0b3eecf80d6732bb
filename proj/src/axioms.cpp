#include "stepauto/axioms.hpp"

#include "stepauto/error.hpp"

namespace stepauto {

namespace {

Axiom equation(std::string id, const char* lhs, const char* rhs) {
  return {std::move(id), AxiomKind::Equation, parse_expr(lhs), parse_expr(rhs), {}, {}, {}};
}

Axiom containment(std::string id, const char* lhs, const char* rhs) {
  return {std::move(id), AxiomKind::Containment, parse_expr(lhs), parse_expr(rhs), {}, {}, {}};
}

Axiom conditional(std::string id, const char* plhs, const char* prhs, const char* lhs,
                  const char* rhs) {
  return {std::move(id),    AxiomKind::Conditional, parse_expr(lhs), parse_expr(rhs),
          parse_expr(plhs), parse_expr(prhs),       {}};
}

std::vector<Axiom> build_table() {
  std::vector<Axiom> t = {
      equation("A1", "x+y", "y+x"),
      equation("A2", "x+(y+z)", "(x+y)+z"),
      equation("A3", "x+x", "x"),
      equation("A4", "(x+y).z", "x.z+y.z"),
      equation("A5", "x.(y+z)", "x.y+x.z"),
      equation("A6", "x.(y.z)", "(x.y).z"),
      equation("A7", "x+0", "x"),
      equation("A8", "0.x", "0"),
      equation("A9", "x.0", "0"),
      equation("A10", "x.1", "x"),
      equation("A11", "1.x", "x"),
      equation("P1", "x||y", "y||x"),
      equation("P2", "x||(y||z)", "(x||y)||z"),
      equation("P3", "(x+y)||z", "x||z+y||z"),
      equation("P4", "x||(y+z)", "x||y+x||z"),
      containment("P5", "(x||y).(z||h)", "(x.z)||(y.h)"),
      equation("P6", "x||0", "0"),
      equation("P7", "0||x", "0"),
      equation("P8", "x||1", "x"),
      equation("P9", "1||x", "x"),
      equation("A12", "1+x.x*", "x*"),
      equation("A13", "1+x*.x", "x*"),
      conditional("A14", "x+y.z", "z", "y*.x", "z"),
      conditional("A15", "x+y.z", "y", "x.z*", "y"),
      equation("P10", "1+x||x^*", "x^*"),
      equation("P11", "1+x^*||x", "x^*"),
      conditional("P12", "x+y||z", "z", "y^*||x", "z"),
      conditional("P13", "x+y||z", "y", "x||z^*", "y"),
  };
  for (Axiom& a : t) {
    std::set<Letter> vars = letters_of(a.lhs);
    for (Letter v : letters_of(a.rhs)) vars.insert(v);
    for (Letter v : letters_of(a.premise_lhs)) vars.insert(v);
    for (Letter v : letters_of(a.premise_rhs)) vars.insert(v);
    a.variables.assign(vars.begin(), vars.end());
  }
  return t;
}

struct SideCheck {
  bool ok = true;
  std::optional<Pomset> witness;
  std::string where;
};

SideCheck compare(Semantics& sem, const Expr& lhs, const Expr& rhs, bool equation) {
  const PomsetLanguage& l = sem(lhs);
  const PomsetLanguage& r = sem(rhs);
  SideCheck c;
  auto only_l = first_missing(l, r);
  auto only_r = equation ? first_missing(r, l) : std::nullopt;
  if (!only_l && !only_r) return c;
  c.ok = false;
  if (only_l && (!only_r || *only_l < *only_r)) {
    c.witness = only_l;
    c.where = "lhs only";
  } else {
    c.witness = only_r;
    c.where = "rhs only";
  }
  return c;
}

bool subsumed_into(const PomsetLanguage& l, const PomsetLanguage& r) {
  for (const Pomset& u : l) {
    bool found = false;
    for (const Pomset& v : r) {
      if (v.size() == u.size() && subsumes(u, v)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

void check_instance(const Axiom& ax, const Env& env, Semantics& sem, AxiomReport& report) {
  ++report.instances_checked;
  if (ax.kind == AxiomKind::Conditional) {
    SideCheck premise = compare(sem, substitute(ax.premise_lhs, env),
                                substitute(ax.premise_rhs, env), false);
    if (!premise.ok) {
      ++report.vacuous;
      return;
    }
  }
  Expr lhs = substitute(ax.lhs, env);
  Expr rhs = substitute(ax.rhs, env);
  SideCheck c = compare(sem, lhs, rhs, ax.kind == AxiomKind::Equation);
  if (!c.ok && ax.kind == AxiomKind::Containment && !subsumed_into(sem(lhs), sem(rhs))) {
    report.holds_up_to_subsumption = false;
  }
  if (!c.ok && report.holds()) {
    report.status = AxiomStatus::Fails;
    report.counterexample = Counterexample{env, *c.witness, c.where};
  }
}

// Builds an instance satisfying the premise of a conditional axiom by
// redefining the variable on the right of the premise.
Env premise_instance(const std::string& id, Env env, const Expr& w) {
  const Expr& x = env.at('x');
  const Expr& y = env.at('y');
  const Expr& z = env.at('z');
  Expr xw = Expr::sum(x, w);
  if (id == "A14") {
    env['z'] = Expr::seq(Expr::star(y), xw);
  } else if (id == "A15") {
    env['y'] = Expr::seq(xw, Expr::star(z));
  } else if (id == "P12") {
    env['z'] = Expr::par(Expr::parstar(y), xw);
  } else if (id == "P13") {
    env['y'] = Expr::par(xw, Expr::parstar(z));
  }
  return env;
}

}  // namespace

const std::vector<Axiom>& axiom_table() {
  static const std::vector<Axiom> table = build_table();
  return table;
}

const Axiom& find_axiom(const std::string& id) {
  for (const Axiom& a : axiom_table()) {
    if (a.id == id) return a;
  }
  throw DomainError("unknown axiom: " + id);
}

AxiomReport check_axiom(const std::string& id, const Env& env, std::size_t bound,
                        Interpretation interp) {
  const Axiom& ax = find_axiom(id);
  for (Letter v : ax.variables) {
    if (!env.count(v)) throw DomainError(std::string("unbound variable '") + v + "' in " + id);
  }
  Semantics sem(bound, interp);
  AxiomReport report;
  report.id = id;
  check_instance(ax, env, sem, report);
  return report;
}

std::vector<AxiomReport> run_axiom_suite(const AxiomSuiteConfig& config) {
  ExprGenerator gen(config.seed);
  Semantics sem(config.bound, config.interp);
  std::vector<AxiomReport> reports;
  for (const Axiom& ax : axiom_table()) {
    AxiomReport report;
    report.id = ax.id;
    for (std::size_t i = 0; i < config.samples; ++i) {
      Env env;
      for (Letter v : {'x', 'y', 'z', 'h'}) env[v] = gen.next();
      check_instance(ax, env, sem, report);
      if (ax.kind == AxiomKind::Conditional) {
        check_instance(ax, premise_instance(ax.id, env, gen.next()), sem, report);
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::size_t ExprGenerator::pick(std::size_t n) {
  return static_cast<std::size_t>(rng_() % n);
}

double ExprGenerator::unit() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Expr ExprGenerator::next() { return next(config_.max_depth); }

Expr ExprGenerator::next(std::size_t depth) {
  if (depth == 0 || unit() < 0.3) {
    std::size_t k = pick(config_.alphabet.size() + 2);
    if (k == 0) return Expr::zero();
    if (k == 1) return Expr::one();
    return Expr::letter(config_.alphabet[k - 2]);
  }
  if (unit() < config_.star_probability) {
    Expr body = next(depth - 1);
    return pick(2) == 0 ? Expr::star(body) : Expr::parstar(body);
  }
  switch (pick(3)) {
    case 0: {
      Expr l = next(depth - 1);
      return Expr::sum(l, next(depth - 1));
    }
    case 1: {
      Expr l = next(depth - 1);
      return Expr::seq(l, next(depth - 1));
    }
    default: {
      Expr l = next(depth - 1);
      return Expr::par(l, next(depth - 1));
    }
  }
}

std::string to_string(const Env& env) {
  std::string out;
  for (const auto& [v, e] : env) {
    if (!out.empty()) out += ", ";
    out += std::string(1, v) + "=" + e.text();
  }
  return out;
}

}  // namespace stepauto
