#include "stepauto/kleene.hpp"

#include <deque>
#include <functional>

namespace stepauto {

ExprSet seq_after(const ExprSet& s, const Expr& y) {
  ExprSet out;
  for (const Expr& x : s) out.insert(make_seq(x, y));
  return out;
}

ExprSet guard(const Expr& x, const ExprSet& s) { return nullable(x) ? s : ExprSet{}; }

ExprSet delta_spr(const Expr& x, Letter a) {
  switch (x.op()) {
    case Op::Letter:
      if (x.letter() == a) return {Expr::one()};
      return {};
    case Op::Sum: {
      ExprSet out = delta_spr(x.left(), a);
      ExprSet r = delta_spr(x.right(), a);
      out.insert(r.begin(), r.end());
      return out;
    }
    case Op::Seq: {
      ExprSet out = seq_after(delta_spr(x.left(), a), x.right());
      ExprSet r = guard(x.left(), delta_spr(x.right(), a));
      out.insert(r.begin(), r.end());
      return out;
    }
    case Op::Star: return seq_after(delta_spr(x.body(), a), x);
    default: return {};
  }
}

namespace {

void merge(DerivativeTable& into, const DerivativeTable& from) {
  for (const auto& [u, s] : from) into[u].insert(s.begin(), s.end());
}

using Move = std::pair<Step, Expr>;

std::vector<Move> moves(const DerivativeTable& t) {
  std::vector<Move> out;
  for (const auto& [u, s] : t) {
    for (const Expr& e : s) out.emplace_back(u, e);
  }
  return out;
}

// Calls visit(step, remainders) for every nonempty multiset of at most
// `width` moves.
void for_each_multiset(const std::vector<Move>& items, std::size_t width,
                       const std::function<void(const Step&, const std::vector<Expr>&)>& visit) {
  std::vector<Expr> rems;
  std::function<void(std::size_t, const Step&)> rec = [&](std::size_t start, const Step& u) {
    if (!rems.empty()) visit(u, rems);
    if (rems.size() == width) return;
    for (std::size_t j = start; j < items.size(); ++j) {
      rems.push_back(items[j].second);
      rec(j, u + items[j].first);
      rems.pop_back();
    }
  };
  rec(0, Step());
}

}  // namespace

Deriver::Deriver(std::size_t width) : width_(width == 0 ? 1 : width) {}

const DerivativeTable& Deriver::table(const Expr& x) {
  auto it = memo_.find(x.text());
  if (it != memo_.end()) return it->second;
  DerivativeTable t = compute(x);
  return memo_.emplace(x.text(), std::move(t)).first->second;
}

ExprSet Deriver::gamma(const Expr& x, const Step& u) {
  const DerivativeTable& t = table(x);
  auto it = t.find(u);
  return it == t.end() ? ExprSet{} : it->second;
}

std::set<Step> Deriver::initial_steps(const Expr& x) {
  std::set<Step> out;
  for (const auto& [u, s] : table(x)) out.insert(u);
  return out;
}

DerivativeTable Deriver::compute(const Expr& x) {
  switch (x.op()) {
    case Op::Zero:
    case Op::One: return {};
    case Op::Letter: return {{Step{x.letter()}, {Expr::one()}}};
    case Op::Sum: {
      DerivativeTable t = table(x.left());
      merge(t, table(x.right()));
      return t;
    }
    case Op::Seq: {
      DerivativeTable t;
      for (const auto& [u, s] : table(x.left())) t[u] = seq_after(s, x.right());
      if (nullable(x.left())) merge(t, table(x.right()));
      return t;
    }
    case Op::Star: {
      DerivativeTable t;
      for (const auto& [u, s] : table(x.body())) t[u] = seq_after(s, x);
      return t;
    }
    case Op::Par: return par_table(x);
    case Op::ParStar: return parstar_table(x);
  }
  return {};
}

DerivativeTable Deriver::par_table(const Expr& x) {
  auto side = [&](const Expr& e) {
    std::vector<Move> m = moves(table(e));
    // A nullable side may sit the step out; an empty step marks that.
    if (nullable(e)) m.emplace_back(Step(), e);
    return m;
  };
  std::vector<Move> left = side(x.left());
  std::vector<Move> right = side(x.right());
  DerivativeTable t;
  for (const Move& l : left) {
    for (const Move& r : right) {
      if (l.first.empty() && r.first.empty()) continue;
      t[l.first + r.first].insert(make_par(l.second, r.second));
    }
  }
  return t;
}

DerivativeTable Deriver::parstar_table(const Expr& x) {
  std::vector<Move> items = moves(table(x.body()));
  DerivativeTable t;
  if (items.empty()) return t;
  // More copies can always be started, so any finite W limits the steps.
  capped_.insert(x);
  for_each_multiset(items, width_, [&](const Step& u, const std::vector<Expr>& rems) {
    t[u].insert(make_seq(make_par(rems), x));
  });
  return t;
}

ExprSet gamma_spr(const Expr& x, const Step& u, std::size_t width) {
  Deriver d(width);
  return d.gamma(x, u);
}

std::set<Step> initial_steps(const Expr& x, std::size_t width) {
  Deriver d(width);
  return d.initial_steps(x);
}

namespace {

ExprSet structural(const Expr& x, std::size_t width) {
  switch (x.op()) {
    case Op::Zero: return {Expr::zero()};
    case Op::One: return {Expr::one()};
    case Op::Letter: return {x, Expr::one()};
    case Op::Sum: {
      ExprSet out = structural(x.left(), width);
      ExprSet r = structural(x.right(), width);
      out.insert(r.begin(), r.end());
      return out;
    }
    case Op::Seq: {
      ExprSet l = structural(x.left(), width);
      ExprSet out = seq_after(l, x.right());
      ExprSet r = structural(x.right(), width);
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      return out;
    }
    case Op::Star: {
      ExprSet l = structural(x.body(), width);
      ExprSet out = seq_after(l, x);
      out.insert(l.begin(), l.end());
      out.insert(x);
      return out;
    }
    case Op::Par: {
      ExprSet l = structural(x.left(), width);
      ExprSet r = structural(x.right(), width);
      ExprSet out = l;
      out.insert(r.begin(), r.end());
      out.insert(x);
      out.insert(Expr::one());
      // Both sides advance independently within one synchronous run.
      for (const Expr& p : l) {
        for (const Expr& q : r) out.insert(make_par(p, q));
      }
      return out;
    }
    case Op::ParStar: {
      ExprSet l = structural(x.body(), width);
      ExprSet out = l;
      out.insert(x);
      out.insert(Expr::one());
      // Pending copies: up to W residuals composed in parallel, then x again.
      std::vector<Move> items;
      for (const Expr& e : l) {
        if (!e.is_one()) items.emplace_back(Step(), e);
      }
      for_each_multiset(items, width, [&](const Step&, const std::vector<Expr>& rems) {
        out.insert(make_seq(make_par(rems), x));
      });
      return out;
    }
  }
  return {};
}

}  // namespace

ExprSet reachable(const Expr& x, std::size_t width) {
  ExprSet out = structural(x, width);
  out.insert(x);
  return out;
}

CompileResult compile(const Expr& x, std::size_t width) {
  Deriver d(width);
  CompileResult result;
  result.width = d.width();
  result.initial = x.text();
  StepAutomaton& a = result.automaton;

  std::deque<Expr> todo{x};
  a.add_state(x.text(), nullable(x));
  while (!todo.empty()) {
    Expr q = todo.front();
    todo.pop_front();
    for (const auto& [u, targets] : d.table(q)) {
      ExprSet letter_targets;
      if (u.is_singleton()) letter_targets = delta_spr(q, u.letters()[0]);
      for (const Expr& t : targets) {
        if (!a.has_state(t.text())) {
          a.add_state(t.text(), nullable(t));
          todo.push_back(t);
        }
        if (letter_targets.count(t)) {
          a.add_delta(q.text(), u.letters()[0], t.text());
        } else {
          a.add_gamma(q.text(), u, t.text());
        }
      }
    }
  }
  result.well_nested = is_well_nested(a);
  result.capped.assign(d.capped().begin(), d.capped().end());
  return result;
}

}  // namespace stepauto
