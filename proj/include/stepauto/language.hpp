#pragma once

// Size-bounded pomset languages.
//
// A PomsetLanguage holds every member with at most `bound()` nodes. When
// `exact()` is set the member set is precisely the truncation of the denoted
// (possibly infinite) language; operations track whether exactness survives.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stepauto/pomset.hpp"

namespace stepauto {

class PomsetLanguage {
 public:
  explicit PomsetLanguage(std::size_t bound = 0, bool exact = true)
      : bound_(bound), exact_(exact) {}

  static PomsetLanguage empty(std::size_t bound) { return PomsetLanguage(bound); }
  static PomsetLanguage unit(std::size_t bound);
  static PomsetLanguage singleton(const Pomset& p, std::size_t bound);
  static PomsetLanguage of(std::initializer_list<Pomset> members, std::size_t bound);

  std::size_t bound() const noexcept { return bound_; }
  bool exact() const noexcept { return exact_; }
  void set_exact(bool exact) noexcept { exact_ = exact; }

  /// Inserts `p` if it fits in the bound; returns whether it was new.
  bool insert(const Pomset& p);
  bool contains(const Pomset& p) const { return members_.count(p) != 0; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const std::set<Pomset>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  /// Members grouped by node count, index = size.
  std::vector<std::vector<const Pomset*>> by_size() const;

  /// Restriction to members of at most `bound` nodes.
  PomsetLanguage truncated(std::size_t bound) const;

  /// Member notation, sorted lexicographically.
  std::vector<std::string> sorted_text() const;

  friend bool operator==(const PomsetLanguage& a, const PomsetLanguage& b) {
    return a.bound_ == b.bound_ && a.members_ == b.members_;
  }

 private:
  std::size_t bound_;
  bool exact_;
  std::set<Pomset> members_;
};

bool is_subset(const PomsetLanguage& l, const PomsetLanguage& k);

PomsetLanguage lang_union(const PomsetLanguage& l, const PomsetLanguage& k);
PomsetLanguage lang_seq(const PomsetLanguage& l, const PomsetLanguage& k);
PomsetLanguage lang_par(const PomsetLanguage& l, const PomsetLanguage& k);
PomsetLanguage lang_star(const PomsetLanguage& l);
PomsetLanguage lang_parstar(const PomsetLanguage& l);

using Substitution = std::map<Letter, PomsetLanguage>;

/// Homomorphic extension of `zeta` over the sp-structure of each member.
PomsetLanguage lang_substitute(const Substitution& zeta, const PomsetLanguage& l);

}  // namespace stepauto
