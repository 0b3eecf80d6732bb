#pragma once

// Labelled posets, pomsets and steps.
//
// A LabelledPoset is a concrete carrier {0..n-1} with a strict order stored
// as successor/predecessor bitmasks. A Pomset is the isomorphism class of a
// labelled poset, represented by its canonical form, so that two Pomsets
// compare equal exactly when their posets are isomorphic.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stepauto {

using Letter = char;

/// Nodes are addressed by bit position; carriers are limited to 64 nodes.
using NodeMask = std::uint64_t;

inline constexpr NodeMask bit(std::size_t i) { return NodeMask{1} << i; }

/// A multiset of letters executed simultaneously. Letters are kept sorted.
class Step {
 public:
  Step() = default;
  explicit Step(std::string letters);
  Step(std::initializer_list<Letter> letters);

  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  bool is_singleton() const noexcept { return letters_.size() == 1; }

  /// Multiset union.
  Step operator+(const Step& other) const;

  /// `a` for singletons, `<a,b>` otherwise, `<>` for the empty step.
  std::string to_string() const;

  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;

 private:
  std::string letters_;
};

/// A finite sequence of nonempty steps; the empty sequence is the word `1`.
using StepWord = std::vector<Step>;

std::string to_string(const StepWord& word);

/// Parses `a.<b,c>.d`; `1` denotes the empty word.
StepWord parse_step_word(std::string_view text);

class LabelledPoset {
 public:
  static constexpr std::size_t kMaxNodes = 64;

  LabelledPoset() = default;

  /// Builds a poset from labels and a generating set of strict pairs (i, j),
  /// meaning i < j. The transitive closure is taken; cycles are rejected.
  static LabelledPoset from_relation(
      std::string labels,
      const std::vector<std::pair<std::size_t, std::size_t>>& less);

  /// Builds a poset from already transitively closed successor masks.
  static LabelledPoset from_closed(std::string labels,
                                   std::vector<NodeMask> successors);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  Letter label(std::size_t i) const { return labels_[i]; }
  const std::string& labels() const noexcept { return labels_; }

  /// Strict order test i < j.
  bool less(std::size_t i, std::size_t j) const { return (succ_[i] >> j) & 1U; }
  bool comparable(std::size_t i, std::size_t j) const {
    return less(i, j) || less(j, i);
  }
  NodeMask successors(std::size_t i) const { return succ_[i]; }
  NodeMask predecessors(std::size_t i) const { return pred_[i]; }
  const std::vector<NodeMask>& successor_masks() const noexcept { return succ_; }

  NodeMask all_nodes() const noexcept;

  /// Sub-poset induced by the nodes in `mask`, renumbered in ascending order.
  LabelledPoset induced(NodeMask mask) const;

  /// Applies a relabelling of the carrier: node i becomes node perm[i].
  LabelledPoset permuted(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const LabelledPoset& a, const LabelledPoset& b) {
    return a.labels_ == b.labels_ && a.succ_ == b.succ_;
  }

 private:
  void rebuild_predecessors();

  std::string labels_;
  std::vector<NodeMask> succ_;
  std::vector<NodeMask> pred_;
};

LabelledPoset disjoint_union(const LabelledPoset& u, const LabelledPoset& v,
                             bool order_across);

/// Deterministic canonical representative of the isomorphism class.
LabelledPoset canonical_form(const LabelledPoset& u);

/// Exhaustive label- and order-preserving bijection search.
bool is_isomorphic(const LabelledPoset& u, const LabelledPoset& v);

class Pomset {
 public:
  /// The empty pomset `1`.
  Pomset() = default;
  explicit Pomset(const LabelledPoset& poset);

  static Pomset letter(Letter a);
  static Pomset step(const Step& step);

  const LabelledPoset& poset() const noexcept { return canonical_; }
  std::size_t size() const noexcept { return canonical_.size(); }
  bool empty() const noexcept { return canonical_.empty(); }
  bool is_primitive() const noexcept { return canonical_.size() == 1; }

  /// Textual notation: `1`, letters, `.`, `||`, parentheses. Pomsets that
  /// are not series-parallel are printed as `{labels:i<j,...}`.
  std::string to_string() const;

  friend bool operator==(const Pomset& a, const Pomset& b) {
    return a.canonical_ == b.canonical_;
  }
  friend std::strong_ordering operator<=>(const Pomset& a, const Pomset& b);

 private:
  LabelledPoset canonical_;
};

struct PomsetHash {
  std::size_t operator()(const Pomset& p) const noexcept;
};

Pomset par_compose(const Pomset& u, const Pomset& v);
Pomset seq_compose(const Pomset& u, const Pomset& v);

bool is_n_free(const LabelledPoset& u);
inline bool is_n_free(const Pomset& u) { return is_n_free(u.poset()); }

bool is_series_parallel(const LabelledPoset& u);
inline bool is_series_parallel(const Pomset& u) {
  return is_series_parallel(u.poset());
}

/// Splits into nonempty U1, U2 with U = U1 . U2 (resp. U1 || U2).
bool is_sequential(const Pomset& u);
bool is_parallel(const Pomset& u);

/// Unique sequential factorization; requires a nonempty sp-pomset.
std::vector<Pomset> seq_factorize(const Pomset& u);

/// Unique parallel factorization as a sorted multiset; requires a nonempty
/// sp-pomset.
std::vector<Pomset> par_factorize(const Pomset& u);

std::size_t width(const Pomset& u);

/// Requires a series-parallel pomset.
std::size_t depth(const Pomset& u);

/// True iff some label-preserving bijection h from v onto u satisfies
/// x <_v y  =>  h(x) <_u h(y), i.e. u is at least as ordered as v.
bool subsumes(const Pomset& u, const Pomset& v);

Pomset step_word_to_pomset(const StepWord& word);

/// Parses the pomset notation produced by Pomset::to_string (sp form only).
Pomset parse_pomset(std::string_view text);

}  // namespace stepauto

template <>
struct std::hash<stepauto::Pomset> : stepauto::PomsetHash {};
