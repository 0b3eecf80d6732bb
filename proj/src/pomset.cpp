#include "stepauto/pomset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "stepauto/error.hpp"

namespace stepauto {

// ---------------------------------------------------------------------------
// Step

Step::Step(std::string letters) : letters_(std::move(letters)) {
  std::sort(letters_.begin(), letters_.end());
}

Step::Step(std::initializer_list<Letter> letters)
    : Step(std::string(letters.begin(), letters.end())) {}

Step Step::operator+(const Step& other) const {
  return Step(letters_ + other.letters_);
}

std::string Step::to_string() const {
  if (letters_.size() == 1) return std::string(1, letters_[0]);
  std::string out = "<";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ',';
    out += letters_[i];
  }
  return out + ">";
}

std::string to_string(const StepWord& word) {
  if (word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += word[i].to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// LabelledPoset

namespace {

void check_capacity(std::size_t n) {
  if (n > LabelledPoset::kMaxNodes) {
    throw DomainError("labelled poset exceeds " +
                      std::to_string(LabelledPoset::kMaxNodes) + " nodes");
  }
}

std::size_t lowest(NodeMask m) { return static_cast<std::size_t>(std::countr_zero(m)); }

}  // namespace

LabelledPoset LabelledPoset::from_relation(
    std::string labels,
    const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  const std::size_t n = labels.size();
  check_capacity(n);
  std::vector<NodeMask> succ(n, 0);
  for (auto [i, j] : less) {
    if (i >= n || j >= n) throw DomainError("relation refers to unknown node");
    if (i == j) continue;
    succ[i] |= bit(j);
  }
  // Warshall closure on bitmask rows.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((succ[i] >> k) & 1U) succ[i] |= succ[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if ((succ[i] >> i) & 1U) throw DomainError("relation is not antisymmetric");
  }
  return from_closed(std::move(labels), std::move(succ));
}

LabelledPoset LabelledPoset::from_closed(std::string labels,
                                         std::vector<NodeMask> successors) {
  check_capacity(labels.size());
  LabelledPoset p;
  p.labels_ = std::move(labels);
  p.succ_ = std::move(successors);
  p.rebuild_predecessors();
  return p;
}

void LabelledPoset::rebuild_predecessors() {
  const std::size_t n = labels_.size();
  pred_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeMask m = succ_[i]; m; m &= m - 1) pred_[lowest(m)] |= bit(i);
  }
}

NodeMask LabelledPoset::all_nodes() const noexcept {
  const std::size_t n = size();
  return n == 64 ? ~NodeMask{0} : bit(n) - 1;
}

LabelledPoset LabelledPoset::induced(NodeMask mask) const {
  std::vector<std::size_t> index(size(), 0);
  std::string labels;
  for (NodeMask m = mask; m; m &= m - 1) {
    std::size_t i = lowest(m);
    index[i] = labels.size();
    labels += labels_[i];
  }
  std::vector<NodeMask> succ(labels.size(), 0);
  for (NodeMask m = mask; m; m &= m - 1) {
    std::size_t i = lowest(m);
    for (NodeMask s = succ_[i] & mask; s; s &= s - 1) {
      succ[index[i]] |= bit(index[lowest(s)]);
    }
  }
  return from_closed(std::move(labels), std::move(succ));
}

LabelledPoset LabelledPoset::permuted(const std::vector<std::size_t>& perm) const {
  const std::size_t n = size();
  std::string labels(n, '\0');
  std::vector<NodeMask> succ(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = labels_[i];
    for (NodeMask s = succ_[i]; s; s &= s - 1) succ[perm[i]] |= bit(perm[lowest(s)]);
  }
  return from_closed(std::move(labels), std::move(succ));
}

LabelledPoset disjoint_union(const LabelledPoset& u, const LabelledPoset& v,
                             bool order_across) {
  const std::size_t nu = u.size();
  const std::size_t nv = v.size();
  check_capacity(nu + nv);
  std::vector<NodeMask> succ(nu + nv, 0);
  const NodeMask v_nodes = (v.all_nodes()) << nu;
  for (std::size_t i = 0; i < nu; ++i) {
    succ[i] = u.successors(i) | (order_across ? v_nodes : 0);
  }
  for (std::size_t j = 0; j < nv; ++j) succ[nu + j] = v.successors(j) << nu;
  return LabelledPoset::from_closed(u.labels() + v.labels(), std::move(succ));
}

// ---------------------------------------------------------------------------
// Canonical form: colour refinement on (label, predecessor colours, successor
// colours), then a branch-and-bound search for the lexicographically least
// adjacency code among orderings compatible with the colour classes. Twin
// nodes (same label and same neighbourhoods) are interchangeable, so only one
// of them is tried at each branching point.

namespace {

std::vector<int> refine_colours(const LabelledPoset& p) {
  const std::size_t n = p.size();
  std::vector<int> colour(n);
  std::vector<std::vector<int>> sig(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig[i] = {static_cast<unsigned char>(p.label(i)),
              std::popcount(p.predecessors(i)),
              std::popcount(p.successors(i))};
  }
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<int>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i) {
      colour[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sig[i]) - sorted.begin());
    }
    if (sorted.size() == classes) break;
    classes = sorted.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> preds;
      std::vector<int> succs;
      for (NodeMask m = p.predecessors(i); m; m &= m - 1) preds.push_back(colour[lowest(m)]);
      for (NodeMask m = p.successors(i); m; m &= m - 1) succs.push_back(colour[lowest(m)]);
      std::sort(preds.begin(), preds.end());
      std::sort(succs.begin(), succs.end());
      std::vector<int> s{colour[i], -1};
      s.insert(s.end(), preds.begin(), preds.end());
      s.push_back(-2);
      s.insert(s.end(), succs.begin(), succs.end());
      sig[i] = std::move(s);
    }
  }
  return colour;
}

bool twins(const LabelledPoset& p, std::size_t u, std::size_t v) {
  if (p.label(u) != p.label(v)) return false;
  const NodeMask both = bit(u) | bit(v);
  return (p.predecessors(u) & ~both) == (p.predecessors(v) & ~both) &&
         (p.successors(u) & ~both) == (p.successors(v) & ~both) &&
         !p.comparable(u, v);
}

class Canonizer {
 public:
  explicit Canonizer(const LabelledPoset& p)
      : p_(p), n_(p.size()), colour_(refine_colours(p)) {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return colour_[a] < colour_[b]; });
    for (std::size_t i : order) cell_.push_back(colour_[i]);
    path_.resize(n_);
    code_.resize(n_);
  }

  LabelledPoset run() {
    search(0, 0, true);
    std::vector<std::size_t> perm(n_);
    for (std::size_t pos = 0; pos < n_; ++pos) perm[best_[pos]] = pos;
    return p_.permuted(perm);
  }

 private:
  using Code = std::pair<NodeMask, NodeMask>;

  Code code_at(std::size_t pos, std::size_t v) const {
    NodeMask below = 0;
    NodeMask above = 0;
    for (std::size_t j = 0; j < pos; ++j) {
      if (p_.less(path_[j], v)) below |= bit(j);
      if (p_.less(v, path_[j])) above |= bit(j);
    }
    return {below, above};
  }

  void search(std::size_t pos, NodeMask placed, bool prefix_equal) {
    if (pos == n_) {
      best_ = path_;
      best_code_ = code_;
      ++generation_;
      return;
    }
    std::vector<std::size_t> tried;
    for (std::size_t v = 0; v < n_; ++v) {
      if ((placed >> v) & 1U) continue;
      if (colour_[v] != cell_[pos]) continue;
      bool redundant = false;
      for (std::size_t u : tried) {
        if (twins(p_, u, v)) {
          redundant = true;
          break;
        }
      }
      if (redundant) continue;
      tried.push_back(v);

      Code c = code_at(pos, v);
      bool child_equal = false;
      if (!best_.empty() && prefix_equal) {
        // Larger codes sort later; the least code wins.
        if (c > best_code_[pos]) continue;
        child_equal = (c == best_code_[pos]);
      }
      path_[pos] = v;
      code_[pos] = c;
      const std::size_t before = generation_;
      search(pos + 1, placed | bit(v), best_.empty() ? true : child_equal);
      if (generation_ != before) prefix_equal = true;
    }
  }

  const LabelledPoset& p_;
  std::size_t n_;
  std::vector<int> colour_;
  std::vector<int> cell_;
  std::vector<std::size_t> path_;
  std::vector<Code> code_;
  std::vector<std::size_t> best_;
  std::vector<Code> best_code_;
  std::size_t generation_ = 0;
};

}  // namespace

LabelledPoset canonical_form(const LabelledPoset& u) {
  if (u.size() <= 1) return u;
  return Canonizer(u).run();
}

// ---------------------------------------------------------------------------
// Isomorphism by backtracking with label and degree pruning.

namespace {

class IsoSearch {
 public:
  IsoSearch(const LabelledPoset& u, const LabelledPoset& v) : u_(u), v_(v) {}

  bool run() {
    map_.assign(u_.size(), 0);
    return extend(0, 0);
  }

 private:
  bool compatible(std::size_t a, std::size_t b) const {
    return u_.label(a) == v_.label(b) &&
           std::popcount(u_.predecessors(a)) == std::popcount(v_.predecessors(b)) &&
           std::popcount(u_.successors(a)) == std::popcount(v_.successors(b));
  }

  bool extend(std::size_t i, NodeMask used) {
    if (i == u_.size()) return true;
    for (std::size_t b = 0; b < v_.size(); ++b) {
      if ((used >> b) & 1U) continue;
      if (!compatible(i, b)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        ok = u_.less(i, j) == v_.less(b, map_[j]) && u_.less(j, i) == v_.less(map_[j], b);
      }
      if (!ok) continue;
      map_[i] = b;
      if (extend(i + 1, used | bit(b))) return true;
    }
    return false;
  }

  const LabelledPoset& u_;
  const LabelledPoset& v_;
  std::vector<std::size_t> map_;
};

}  // namespace

bool is_isomorphic(const LabelledPoset& u, const LabelledPoset& v) {
  if (u.size() != v.size()) return false;
  std::string lu = u.labels();
  std::string lv = v.labels();
  std::sort(lu.begin(), lu.end());
  std::sort(lv.begin(), lv.end());
  if (lu != lv) return false;
  auto profile = [](const LabelledPoset& p) {
    std::vector<std::tuple<char, int, int>> prof;
    for (std::size_t i = 0; i < p.size(); ++i) {
      prof.emplace_back(p.label(i), std::popcount(p.predecessors(i)),
                        std::popcount(p.successors(i)));
    }
    std::sort(prof.begin(), prof.end());
    return prof;
  };
  if (profile(u) != profile(v)) return false;
  return IsoSearch(u, v).run();
}

// ---------------------------------------------------------------------------
// Pomset

Pomset::Pomset(const LabelledPoset& poset) : canonical_(canonical_form(poset)) {}

Pomset Pomset::letter(Letter a) {
  return Pomset(LabelledPoset::from_closed(std::string(1, a), {0}));
}

Pomset Pomset::step(const Step& step) {
  return Pomset(LabelledPoset::from_closed(step.letters(),
                                           std::vector<NodeMask>(step.size(), 0)));
}

std::strong_ordering operator<=>(const Pomset& a, const Pomset& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.poset().labels() <=> b.poset().labels(); c != 0) return c;
  return a.poset().successor_masks() <=> b.poset().successor_masks();
}

std::size_t PomsetHash::operator()(const Pomset& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.poset().labels());
  for (NodeMask m : p.poset().successor_masks()) {
    h ^= std::hash<NodeMask>{}(m) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Pomset par_compose(const Pomset& u, const Pomset& v) {
  if (u.empty()) return v;
  if (v.empty()) return u;
  return Pomset(disjoint_union(u.poset(), v.poset(), false));
}

Pomset seq_compose(const Pomset& u, const Pomset& v) {
  if (u.empty()) return v;
  if (v.empty()) return u;
  return Pomset(disjoint_union(u.poset(), v.poset(), true));
}

// ---------------------------------------------------------------------------
// N-shapes and series-parallel decomposition

bool is_n_free(const LabelledPoset& u) {
  const std::size_t n = u.size();
  // u0 < u1, u2 < u3, u0 < u3 and every other pair among them incomparable.
  for (std::size_t u0 = 0; u0 < n; ++u0) {
    for (std::size_t u1 = 0; u1 < n; ++u1) {
      if (!u.less(u0, u1)) continue;
      for (std::size_t u3 = 0; u3 < n; ++u3) {
        if (u3 == u1 || !u.less(u0, u3)) continue;
        if (u.comparable(u1, u3)) continue;
        for (std::size_t u2 = 0; u2 < n; ++u2) {
          if (u2 == u0 || u2 == u1 || u2 == u3) continue;
          if (!u.less(u2, u3)) continue;
          if (u.comparable(u0, u2) || u.comparable(u1, u2)) continue;
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

NodeMask comparable_mask(const LabelledPoset& p, std::size_t i) {
  return p.successors(i) | p.predecessors(i);
}

/// Connected components of the comparability graph (connected = true) or of
/// its complement (connected = false), restricted to `mask`.
std::vector<NodeMask> components(const LabelledPoset& p, NodeMask mask,
                                 bool comparability) {
  std::vector<NodeMask> out;
  NodeMask rest = mask;
  while (rest) {
    NodeMask comp = rest & (~rest + 1);
    NodeMask frontier = comp;
    while (frontier) {
      std::size_t i = lowest(frontier);
      frontier &= frontier - 1;
      NodeMask nbrs = comparable_mask(p, i);
      if (!comparability) nbrs = ~nbrs & ~bit(i);
      NodeMask fresh = nbrs & mask & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    out.push_back(comp);
    rest &= ~comp;
  }
  return out;
}

bool sp_rec(const LabelledPoset& p, NodeMask mask) {
  if (std::popcount(mask) <= 1) return true;
  auto par = components(p, mask, true);
  if (par.size() > 1) {
    return std::all_of(par.begin(), par.end(),
                       [&](NodeMask m) { return sp_rec(p, m); });
  }
  auto seq = components(p, mask, false);
  if (seq.size() > 1) {
    return std::all_of(seq.begin(), seq.end(),
                       [&](NodeMask m) { return sp_rec(p, m); });
  }
  return false;
}

/// Orders the co-components of a sequential pomset from first to last.
std::vector<NodeMask> ordered_blocks(const LabelledPoset& p,
                                     std::vector<NodeMask> blocks) {
  auto rank = [&](NodeMask b) {
    int r = 64;
    for (NodeMask m = b; m; m &= m - 1) {
      r = std::min(r, std::popcount(p.predecessors(lowest(m))));
    }
    return r;
  };
  std::sort(blocks.begin(), blocks.end(),
            [&](NodeMask a, NodeMask b) { return rank(a) < rank(b); });
  return blocks;
}

std::size_t depth_rec(const LabelledPoset& p, NodeMask mask) {
  if (std::popcount(mask) <= 1) return 0;
  auto par = components(p, mask, true);
  if (par.size() <= 1) par = components(p, mask, false);
  if (par.size() <= 1) throw DomainError("not series-parallel");
  std::size_t d = 0;
  for (NodeMask m : par) d = std::max(d, depth_rec(p, m));
  return d + 1;
}

void require_sp(const Pomset& u) {
  if (!is_series_parallel(u)) throw DomainError("not series-parallel");
}

}  // namespace

bool is_series_parallel(const LabelledPoset& u) {
  return sp_rec(u, u.all_nodes());
}

bool is_sequential(const Pomset& u) {
  return u.size() > 1 && components(u.poset(), u.poset().all_nodes(), false).size() > 1;
}

bool is_parallel(const Pomset& u) {
  return u.size() > 1 && components(u.poset(), u.poset().all_nodes(), true).size() > 1;
}

std::vector<Pomset> seq_factorize(const Pomset& u) {
  if (u.empty()) throw DomainError("factorization of the empty pomset");
  require_sp(u);
  const LabelledPoset& p = u.poset();
  auto blocks = ordered_blocks(p, components(p, p.all_nodes(), false));
  std::vector<Pomset> out;
  for (NodeMask b : blocks) out.emplace_back(p.induced(b));
  return out;
}

std::vector<Pomset> par_factorize(const Pomset& u) {
  if (u.empty()) throw DomainError("factorization of the empty pomset");
  require_sp(u);
  const LabelledPoset& p = u.poset();
  std::vector<Pomset> out;
  for (NodeMask b : components(p, p.all_nodes(), true)) out.emplace_back(p.induced(b));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t width(const Pomset& u) {
  const LabelledPoset& p = u.poset();
  std::size_t best = 0;
  // Maximum independent set of the comparability graph.
  auto rec = [&](auto&& self, NodeMask candidates, std::size_t size) -> void {
    if (size + static_cast<std::size_t>(std::popcount(candidates)) <= best) return;
    if (!candidates) {
      best = size;
      return;
    }
    std::size_t v = lowest(candidates);
    NodeMask rest = candidates & ~bit(v);
    self(self, rest & ~comparable_mask(p, v), size + 1);
    self(self, rest, size);
  };
  rec(rec, p.all_nodes(), 0);
  return best;
}

std::size_t depth(const Pomset& u) {
  require_sp(u);
  return depth_rec(u.poset(), u.poset().all_nodes());
}

// ---------------------------------------------------------------------------
// Subsumption

namespace {

class SubsumptionSearch {
 public:
  SubsumptionSearch(const LabelledPoset& u, const LabelledPoset& v) : u_(u), v_(v) {}

  bool run() {
    map_.assign(v_.size(), 0);
    return extend(0, 0);
  }

 private:
  bool extend(std::size_t x, NodeMask used) {
    if (x == v_.size()) return true;
    for (std::size_t hx = 0; hx < u_.size(); ++hx) {
      if ((used >> hx) & 1U) continue;
      if (u_.label(hx) != v_.label(x)) continue;
      if (std::popcount(u_.predecessors(hx)) < std::popcount(v_.predecessors(x)) ||
          std::popcount(u_.successors(hx)) < std::popcount(v_.successors(x))) {
        continue;
      }
      bool ok = true;
      for (std::size_t y = 0; y < x && ok; ++y) {
        if (v_.less(x, y) && !u_.less(hx, map_[y])) ok = false;
        if (v_.less(y, x) && !u_.less(map_[y], hx)) ok = false;
      }
      if (!ok) continue;
      map_[x] = hx;
      if (extend(x + 1, used | bit(hx))) return true;
    }
    return false;
  }

  const LabelledPoset& u_;
  const LabelledPoset& v_;
  std::vector<std::size_t> map_;
};

}  // namespace

bool subsumes(const Pomset& u, const Pomset& v) {
  if (u.size() != v.size()) return false;
  std::string lu = u.poset().labels();
  std::string lv = v.poset().labels();
  std::sort(lu.begin(), lu.end());
  std::sort(lv.begin(), lv.end());
  if (lu != lv) return false;
  return SubsumptionSearch(u.poset(), v.poset()).run();
}

Pomset step_word_to_pomset(const StepWord& word) {
  if (word.empty()) return Pomset();
  // Build the layered poset directly and canonicalize once.
  std::string labels;
  std::vector<std::size_t> layer_start;
  for (const Step& s : word) {
    layer_start.push_back(labels.size());
    labels += s.letters();
  }
  layer_start.push_back(labels.size());
  check_capacity(labels.size());
  std::vector<NodeMask> succ(labels.size(), 0);
  const std::size_t n = labels.size();
  const NodeMask all = n == 64 ? ~NodeMask{0} : bit(n) - 1;
  for (std::size_t l = 0; l < word.size(); ++l) {
    const std::size_t next = layer_start[l + 1];
    const NodeMask later = next >= 64 ? 0 : all & ~(bit(next) - 1);
    for (std::size_t i = layer_start[l]; i < layer_start[l + 1]; ++i) succ[i] = later;
  }
  return Pomset(LabelledPoset::from_closed(std::move(labels), std::move(succ)));
}

}  // namespace stepauto
