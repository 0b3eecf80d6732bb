#include "stepauto/expr.hpp"

namespace stepauto {

const PomsetLanguage& Semantics::operator()(const Expr& x) {
  auto it = memo_.find(x.text());
  if (it != memo_.end()) return it->second;
  PomsetLanguage l = compute(x);
  return memo_.emplace(x.text(), std::move(l)).first->second;
}

PomsetLanguage Semantics::compute(const Expr& x) {
  const bool flat = interp_ == Interpretation::ParAsSeq;
  switch (x.op()) {
    case Op::Zero: return PomsetLanguage::empty(bound_);
    case Op::One: return PomsetLanguage::unit(bound_);
    case Op::Letter: return PomsetLanguage::singleton(Pomset::letter(x.letter()), bound_);
    case Op::Sum: return lang_union((*this)(x.left()), (*this)(x.right()));
    case Op::Seq: return lang_seq((*this)(x.left()), (*this)(x.right()));
    case Op::Par:
      return flat ? lang_seq((*this)(x.left()), (*this)(x.right()))
                  : lang_par((*this)(x.left()), (*this)(x.right()));
    case Op::Star: return lang_star((*this)(x.body()));
    case Op::ParStar:
      return flat ? lang_star((*this)(x.body())) : lang_parstar((*this)(x.body()));
  }
  return PomsetLanguage::empty(bound_);
}

PomsetLanguage semantics(const Expr& x, std::size_t bound, Interpretation interp) {
  Semantics sem(bound, interp);
  return sem(x);
}

std::optional<Pomset> first_missing(const PomsetLanguage& l, const PomsetLanguage& k) {
  for (const Pomset& p : l) {
    if (!k.contains(p)) return p;
  }
  return std::nullopt;
}

EquivResult equiv_bounded(const Expr& x, const Expr& y, std::size_t bound) {
  Semantics sem(bound);
  const PomsetLanguage& lx = sem(x);
  const PomsetLanguage& ly = sem(y);
  EquivResult r;
  auto only_x = first_missing(lx, ly);
  auto only_y = first_missing(ly, lx);
  if (!only_x && !only_y) return r;
  r.equal = false;
  if (only_x && (!only_y || *only_x < *only_y)) {
    r.witness = only_x;
    r.witness_in_first = true;
  } else {
    r.witness = only_y;
  }
  return r;
}

}  // namespace stepauto
