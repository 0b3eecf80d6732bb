#pragma once

// Series-parallel rational expressions.
//
// Expressions are immutable shared trees. Every node caches its printed
// text; printing is injective on trees, so equality and ordering go through
// the text.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stepauto/language.hpp"
#include "stepauto/pomset.hpp"

namespace stepauto {

enum class Op { Zero, One, Letter, Sum, Seq, Par, Star, ParStar };

class Expr {
 public:
  /// The constant 0.
  Expr();

  static Expr zero();
  static Expr one();
  static Expr letter(Letter a);

  // Raw constructors: build exactly the given node, no simplification.
  static Expr sum(const Expr& x, const Expr& y);
  static Expr seq(const Expr& x, const Expr& y);
  static Expr par(const Expr& x, const Expr& y);
  static Expr star(const Expr& x);
  static Expr parstar(const Expr& x);

  Op op() const noexcept;
  Letter letter() const noexcept;
  /// Left operand of a binary node, or the body of a star.
  const Expr& left() const;
  const Expr& right() const;
  const Expr& body() const { return left(); }

  bool is_zero() const noexcept { return op() == Op::Zero; }
  bool is_one() const noexcept { return op() == Op::One; }
  bool is_binary() const noexcept;
  bool is_unary() const noexcept;

  /// Concrete syntax, minimally parenthesized.
  const std::string& text() const noexcept;
  const std::string& to_string() const noexcept { return text(); }

  /// Constructor-style dump, e.g. `Seq(Seq(a,Par(b,c)),d)`.
  std::string ast() const;

  /// Number of AST nodes.
  std::size_t node_count() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b) noexcept {
    return a.node_ == b.node_ || a.text() == b.text();
  }
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b) noexcept {
    return a.text() <=> b.text();
  }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, Letter a, std::optional<Expr> l, std::optional<Expr> r);

  std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax:
///   expr := par { "+" par }
///   par  := seq { "||" seq }
///   seq  := star { "." star }
///   star := atom { "*" | "^*" }
///   atom := "0" | "1" | LETTER | "(" expr ")"
Expr parse_expr(std::string_view text);

// Simplifying constructors. Sums are flattened, deduplicated and sorted;
// parallel operands are flattened and sorted; 0 absorbs and 1 is a unit.
Expr make_sum(const Expr& x, const Expr& y);
Expr make_sum(const std::vector<Expr>& terms);
Expr make_seq(const Expr& x, const Expr& y);
Expr make_par(const Expr& x, const Expr& y);
Expr make_par(const std::vector<Expr>& operands);
Expr make_star(const Expr& x);
Expr make_parstar(const Expr& x);

/// Bottom-up rebuild through the simplifying constructors.
Expr simplify(const Expr& x);

/// Summands of a (possibly nested) sum; a non-sum is its own summand.
std::vector<Expr> summands(const Expr& x);
/// Operands of a (possibly nested) parallel composition.
std::vector<Expr> par_operands(const Expr& x);

bool nullable(const Expr& x);
std::size_t par_depth(const Expr& x);
std::size_t parstar_depth(const Expr& x);
std::set<Letter> letters_of(const Expr& x);
bool is_par_free(const Expr& x);

/// Replaces every letter occurring as a key of `env`.
Expr substitute(const Expr& x, const std::map<Letter, Expr>& env);

/// Interpretation used by the semantics. `ParAsSeq` deliberately reads
/// parallel composition as sequential composition; it exists so the axiom
/// harness can be shown to detect a broken semantics.
enum class Interpretation { Standard, ParAsSeq };

/// Memoizing evaluator of the bounded language semantics.
class Semantics {
 public:
  explicit Semantics(std::size_t bound,
                     Interpretation interp = Interpretation::Standard)
      : bound_(bound), interp_(interp) {}

  std::size_t bound() const noexcept { return bound_; }
  const PomsetLanguage& operator()(const Expr& x);

 private:
  PomsetLanguage compute(const Expr& x);

  std::size_t bound_;
  Interpretation interp_;
  std::map<std::string, PomsetLanguage> memo_;
};

PomsetLanguage semantics(const Expr& x, std::size_t bound,
                         Interpretation interp = Interpretation::Standard);

struct EquivResult {
  bool equal = true;
  /// Smallest pomset in exactly one of the two languages.
  std::optional<Pomset> witness;
  /// True when the witness belongs to the first expression's language.
  bool witness_in_first = false;
};

EquivResult equiv_bounded(const Expr& x, const Expr& y, std::size_t bound);

/// Smallest member of `l` that is not in `k`, if any.
std::optional<Pomset> first_missing(const PomsetLanguage& l, const PomsetLanguage& k);

}  // namespace stepauto

template <>
struct std::hash<stepauto::Expr> {
  std::size_t operator()(const stepauto::Expr& x) const noexcept {
    return std::hash<std::string>()(x.text());
  }
};
