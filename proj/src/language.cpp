#include "stepauto/language.hpp"

#include <algorithm>

#include "stepauto/error.hpp"

namespace stepauto {

PomsetLanguage PomsetLanguage::unit(std::size_t bound) {
  return singleton(Pomset(), bound);
}

PomsetLanguage PomsetLanguage::singleton(const Pomset& p, std::size_t bound) {
  PomsetLanguage l(bound);
  l.insert(p);
  return l;
}

PomsetLanguage PomsetLanguage::of(std::initializer_list<Pomset> members,
                                  std::size_t bound) {
  PomsetLanguage l(bound);
  for (const Pomset& p : members) l.insert(p);
  return l;
}

bool PomsetLanguage::insert(const Pomset& p) {
  if (p.size() > bound_) return false;
  return members_.insert(p).second;
}

std::vector<std::vector<const Pomset*>> PomsetLanguage::by_size() const {
  std::vector<std::vector<const Pomset*>> out(bound_ + 1);
  for (const Pomset& p : members_) out[p.size()].push_back(&p);
  return out;
}

PomsetLanguage PomsetLanguage::truncated(std::size_t bound) const {
  PomsetLanguage out(bound, exact_ && bound <= bound_);
  for (const Pomset& p : members_) out.insert(p);
  return out;
}

std::vector<std::string> PomsetLanguage::sorted_text() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const Pomset& p : members_) out.push_back(p.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subset(const PomsetLanguage& l, const PomsetLanguage& k) {
  return std::includes(k.begin(), k.end(), l.begin(), l.end());
}

namespace {

void require_same_bound(const PomsetLanguage& l, const PomsetLanguage& k) {
  if (l.bound() != k.bound()) {
    throw DomainError("size bounds differ: " + std::to_string(l.bound()) + " vs " +
                      std::to_string(k.bound()));
  }
}

template <typename Compose>
PomsetLanguage product(const PomsetLanguage& l, const PomsetLanguage& k,
                       Compose compose) {
  require_same_bound(l, k);
  const std::size_t bound = l.bound();
  PomsetLanguage out(bound, l.exact() && k.exact());
  auto ls = l.by_size();
  auto ks = k.by_size();
  for (std::size_t i = 0; i <= bound; ++i) {
    for (std::size_t j = 0; i + j <= bound; ++j) {
      for (const Pomset* u : ls[i]) {
        for (const Pomset* v : ks[j]) out.insert(compose(*u, *v));
      }
    }
  }
  return out;
}

template <typename Compose>
PomsetLanguage iterate(const PomsetLanguage& l, Compose compose) {
  const std::size_t bound = l.bound();
  PomsetLanguage result = PomsetLanguage::unit(bound);
  result.set_exact(l.exact());
  PomsetLanguage power = PomsetLanguage::unit(bound);
  for (std::size_t n = 1; n <= bound; ++n) {
    power = product(power, l, compose);
    if (power.empty()) break;
    for (const Pomset& p : power) result.insert(p);
  }
  return result;
}

}  // namespace

PomsetLanguage lang_union(const PomsetLanguage& l, const PomsetLanguage& k) {
  require_same_bound(l, k);
  PomsetLanguage out = l;
  out.set_exact(l.exact() && k.exact());
  for (const Pomset& p : k) out.insert(p);
  return out;
}

PomsetLanguage lang_seq(const PomsetLanguage& l, const PomsetLanguage& k) {
  return product(l, k, seq_compose);
}

PomsetLanguage lang_par(const PomsetLanguage& l, const PomsetLanguage& k) {
  return product(l, k, par_compose);
}

PomsetLanguage lang_star(const PomsetLanguage& l) { return iterate(l, seq_compose); }

PomsetLanguage lang_parstar(const PomsetLanguage& l) { return iterate(l, par_compose); }

namespace {

PomsetLanguage substitute_one(const Substitution& zeta, const Pomset& u,
                              std::size_t bound) {
  if (u.empty()) return PomsetLanguage::unit(bound);
  if (u.is_primitive()) {
    auto it = zeta.find(u.poset().label(0));
    if (it == zeta.end()) {
      throw DomainError(std::string("substitution undefined for letter '") +
                        u.poset().label(0) + "'");
    }
    return it->second.truncated(bound);
  }
  const bool sequential = is_sequential(u);
  auto factors = sequential ? seq_factorize(u) : par_factorize(u);
  PomsetLanguage acc = PomsetLanguage::unit(bound);
  for (const Pomset& f : factors) {
    PomsetLanguage part = substitute_one(zeta, f, bound);
    acc = sequential ? lang_seq(acc, part) : lang_par(acc, part);
  }
  return acc;
}

}  // namespace

PomsetLanguage lang_substitute(const Substitution& zeta, const PomsetLanguage& l) {
  const std::size_t bound = l.bound();
  bool exact = l.exact();
  for (const auto& [a, image] : zeta) {
    // A letter mapped onto a language containing 1 lets members beyond the
    // bound shrink back into it, so the truncation is no longer exact.
    if (!image.exact() || image.contains(Pomset())) exact = false;
  }
  PomsetLanguage out(bound, exact);
  for (const Pomset& u : l) {
    if (!is_series_parallel(u)) throw DomainError("not series-parallel");
    for (const Pomset& p : substitute_one(zeta, u, bound)) out.insert(p);
  }
  return out;
}

}  // namespace stepauto
