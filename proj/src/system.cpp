#include <algorithm>
#include <functional>

#include "stepauto/error.hpp"
#include "stepauto/kleene.hpp"

namespace stepauto {

Expr SprSystem::coefficient(const std::string& q, const std::string& r) const {
  auto it = m.find({q, r});
  return it == m.end() ? Expr::zero() : it->second;
}

Expr SprSystem::constant(const std::string& q) const {
  auto it = b.find(q);
  return it == b.end() ? Expr::zero() : it->second;
}

namespace {

Expr step_expr(const Step& u) {
  std::vector<Expr> letters;
  for (char c : u.letters()) letters.push_back(Expr::letter(c));
  return make_par(letters);
}

// Strongly connected components in reverse topological order: a component
// is listed only after every component it can reach.
std::vector<std::vector<std::size_t>> components_sinks_first(
    std::size_t n, const std::vector<std::set<std::size_t>>& succ) {
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

}  // namespace

SprSystem sa_to_system(const StepAutomaton& a) {
  SprSystem sys;
  sys.states = a.states();
  std::map<std::pair<std::string, std::string>, std::vector<Expr>> terms;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string& q = a.name(i);
    sys.b[q] = a.is_final(i) ? Expr::one() : Expr::zero();
    for (const auto& [l, ts] : a.delta(i)) {
      for (auto t : ts) terms[{q, a.name(t)}].push_back(Expr::letter(l));
    }
    for (const auto& [u, ts] : a.gamma(i)) {
      for (auto t : ts) terms[{q, a.name(t)}].push_back(step_expr(u));
    }
  }
  for (auto& [key, ts] : terms) sys.m[key] = make_sum(ts);
  return sys;
}

std::map<std::string, Expr> least_solution(const SprSystem& sys) {
  const std::size_t n = sys.states.size();
  std::map<std::string, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) id[sys.states[i]] = i;

  // Dense working copy: m[i][j] and b[i].
  std::vector<std::vector<Expr>> m(n, std::vector<Expr>(n, Expr::zero()));
  std::vector<Expr> b(n, Expr::zero());
  std::vector<std::set<std::size_t>> succ(n);
  for (const auto& [key, e] : sys.m) {
    auto qi = id.find(key.first);
    auto ri = id.find(key.second);
    if (qi == id.end() || ri == id.end()) throw DomainError("system entry on unknown state");
    m[qi->second][ri->second] = e;
    if (!e.is_zero()) succ[qi->second].insert(ri->second);
  }
  for (const auto& [q, e] : sys.b) {
    auto qi = id.find(q);
    if (qi == id.end()) throw DomainError("system constant on unknown state");
    b[qi->second] = e;
  }

  std::vector<std::size_t> order;
  for (const auto& comp : components_sinks_first(n, succ)) {
    order.insert(order.end(), comp.begin(), comp.end());
  }

  // Forward elimination: after step k, equation order[k] mentions only
  // states that come later in the order.
  std::vector<bool> eliminated(n, false);
  for (std::size_t k : order) {
    Expr loop = make_star(m[k][k]);
    m[k][k] = Expr::zero();
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[k][j].is_zero()) m[k][j] = make_seq(loop, m[k][j]);
    }
    b[k] = make_seq(loop, b[k]);
    eliminated[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (eliminated[i] || m[i][k].is_zero()) continue;
      const Expr via = m[i][k];
      m[i][k] = Expr::zero();
      b[i] = make_sum(b[i], make_seq(via, b[k]));
      for (std::size_t j = 0; j < n; ++j) {
        if (!m[k][j].is_zero()) m[i][j] = make_sum(m[i][j], make_seq(via, m[k][j]));
      }
    }
  }

  // Back substitution in reverse elimination order.
  std::vector<Expr> s(n, Expr::zero());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::size_t k = *it;
    std::vector<Expr> parts{b[k]};
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[k][j].is_zero()) parts.push_back(make_seq(m[k][j], s[j]));
    }
    s[k] = simplify(make_sum(parts));
  }

  std::map<std::string, Expr> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(sys.states[i], s[i]);
  return out;
}

Expr extract(const StepAutomaton& a, const std::string& q) {
  a.index(q);
  return least_solution(sa_to_system(a)).at(q);
}

}  // namespace stepauto
