#include "stepauto/expr.hpp"

#include <algorithm>
#include <cctype>

#include "stepauto/error.hpp"

namespace stepauto {

struct Expr::Node {
  Op op;
  Letter a = 0;
  std::optional<Expr> l;
  std::optional<Expr> r;
  std::string text;
  std::size_t count = 1;
};

namespace {

int level(Op op) {
  switch (op) {
    case Op::Sum: return 0;
    case Op::Par: return 1;
    case Op::Seq: return 2;
    case Op::Star:
    case Op::ParStar: return 3;
    default: return 4;
  }
}

std::string wrap(const Expr& x, int min_level) {
  if (level(x.op()) >= min_level) return x.text();
  return "(" + x.text() + ")";
}

const char* infix(Op op) {
  switch (op) {
    case Op::Sum: return "+";
    case Op::Par: return "||";
    default: return ".";
  }
}

}  // namespace

Expr Expr::make(Op op, Letter a, std::optional<Expr> l, std::optional<Expr> r) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->a = a;
  switch (op) {
    case Op::Zero: node->text = "0"; break;
    case Op::One: node->text = "1"; break;
    case Op::Letter: node->text = std::string(1, a); break;
    case Op::Star: node->text = wrap(*l, 3) + "*"; break;
    case Op::ParStar: node->text = wrap(*l, 3) + "^*"; break;
    default: {
      int lv = level(op);
      node->text = wrap(*l, lv) + infix(op) + wrap(*r, lv + 1);
    }
  }
  if (l) node->count += l->node_count();
  if (r) node->count += r->node_count();
  node->l = std::move(l);
  node->r = std::move(r);
  return Expr(std::move(node));
}

Expr::Expr() : Expr(zero()) {}

Expr Expr::zero() {
  static const Expr z = make(Op::Zero, 0, std::nullopt, std::nullopt);
  return z;
}

Expr Expr::one() {
  static const Expr o = make(Op::One, 0, std::nullopt, std::nullopt);
  return o;
}

Expr Expr::letter(Letter a) {
  if (a < 'a' || a > 'z') throw DomainError(std::string("not a letter: '") + a + "'");
  return make(Op::Letter, a, std::nullopt, std::nullopt);
}

Expr Expr::sum(const Expr& x, const Expr& y) { return make(Op::Sum, 0, x, y); }
Expr Expr::seq(const Expr& x, const Expr& y) { return make(Op::Seq, 0, x, y); }
Expr Expr::par(const Expr& x, const Expr& y) { return make(Op::Par, 0, x, y); }
Expr Expr::star(const Expr& x) { return make(Op::Star, 0, x, std::nullopt); }
Expr Expr::parstar(const Expr& x) { return make(Op::ParStar, 0, x, std::nullopt); }

Op Expr::op() const noexcept { return node_->op; }
Letter Expr::letter() const noexcept { return node_->a; }

const Expr& Expr::left() const {
  if (!node_->l) throw DomainError("expression has no operand: " + text());
  return *node_->l;
}

const Expr& Expr::right() const {
  if (!node_->r) throw DomainError("expression has no right operand: " + text());
  return *node_->r;
}

bool Expr::is_binary() const noexcept {
  return op() == Op::Sum || op() == Op::Seq || op() == Op::Par;
}

bool Expr::is_unary() const noexcept {
  return op() == Op::Star || op() == Op::ParStar;
}

const std::string& Expr::text() const noexcept { return node_->text; }
std::size_t Expr::node_count() const noexcept { return node_->count; }

std::string Expr::ast() const {
  switch (op()) {
    case Op::Zero: return "0";
    case Op::One: return "1";
    case Op::Letter: return std::string(1, letter());
    case Op::Sum: return "Sum(" + left().ast() + "," + right().ast() + ")";
    case Op::Seq: return "Seq(" + left().ast() + "," + right().ast() + ")";
    case Op::Par: return "Par(" + left().ast() + "," + right().ast() + ")";
    case Op::Star: return "Star(" + body().ast() + ")";
    case Op::ParStar: return "ParStar(" + body().ast() + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected symbol '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  Expr expr() {
    Expr e = par();
    while (accept("+")) e = Expr::sum(e, par());
    return e;
  }
  Expr par() {
    Expr e = seq();
    while (accept("||")) e = Expr::par(e, seq());
    return e;
  }
  Expr seq() {
    Expr e = star();
    while (accept(".")) e = Expr::seq(e, star());
    return e;
  }
  Expr star() {
    Expr e = atom();
    for (;;) {
      if (accept("*")) {
        e = Expr::star(e);
      } else if (accept("^*")) {
        e = Expr::parstar(e);
      } else {
        return e;
      }
    }
  }
  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(")")) fail("expected ')'");
      return e;
    }
    ++pos_;
    if (c == '0') return Expr::zero();
    if (c == '1') return Expr::one();
    if (c >= 'a' && c <= 'z') return Expr::letter(c);
    --pos_;
    fail(std::string("unexpected symbol '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Simplifying constructors

namespace {

void collect(const Expr& x, Op op, std::vector<Expr>& out) {
  if (x.op() == op) {
    collect(x.left(), op, out);
    collect(x.right(), op, out);
  } else {
    out.push_back(x);
  }
}

Expr fold_left(const std::vector<Expr>& items, Expr (*join)(const Expr&, const Expr&)) {
  Expr acc = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) acc = join(acc, items[i]);
  return acc;
}

}  // namespace

std::vector<Expr> summands(const Expr& x) {
  std::vector<Expr> out;
  collect(x, Op::Sum, out);
  return out;
}

std::vector<Expr> par_operands(const Expr& x) {
  std::vector<Expr> out;
  collect(x, Op::Par, out);
  return out;
}

Expr make_sum(const std::vector<Expr>& terms) {
  std::vector<Expr> flat;
  for (const Expr& t : terms) collect(t, Op::Sum, flat);
  std::erase_if(flat, [](const Expr& t) { return t.is_zero(); });
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return Expr::zero();
  return fold_left(flat, Expr::sum);
}

Expr make_sum(const Expr& x, const Expr& y) { return make_sum(std::vector<Expr>{x, y}); }

Expr make_seq(const Expr& x, const Expr& y) {
  if (x.is_zero() || y.is_zero()) return Expr::zero();
  if (x.is_one()) return y;
  if (y.is_one()) return x;
  return Expr::seq(x, y);
}

Expr make_par(const std::vector<Expr>& operands) {
  std::vector<Expr> flat;
  for (const Expr& t : operands) collect(t, Op::Par, flat);
  for (const Expr& t : flat) {
    if (t.is_zero()) return Expr::zero();
  }
  std::erase_if(flat, [](const Expr& t) { return t.is_one(); });
  if (flat.empty()) return Expr::one();
  std::sort(flat.begin(), flat.end());
  return fold_left(flat, Expr::par);
}

Expr make_par(const Expr& x, const Expr& y) { return make_par(std::vector<Expr>{x, y}); }

namespace {

// (1 + x)* and x* denote the same language; the unit summand is dropped.
Expr without_unit(const Expr& x) {
  if (x.op() != Op::Sum) return x;
  std::vector<Expr> terms = summands(x);
  std::erase_if(terms, [](const Expr& t) { return t.is_one(); });
  return make_sum(terms);
}

}  // namespace

Expr make_star(const Expr& x) {
  Expr b = without_unit(x);
  if (b.is_zero() || b.is_one()) return Expr::one();
  if (b.op() == Op::Star) return b;
  return Expr::star(b);
}

Expr make_parstar(const Expr& x) {
  Expr b = without_unit(x);
  if (b.is_zero() || b.is_one()) return Expr::one();
  if (b.op() == Op::ParStar) return b;
  return Expr::parstar(b);
}

Expr simplify(const Expr& x) {
  switch (x.op()) {
    case Op::Zero:
    case Op::One:
    case Op::Letter: return x;
    case Op::Sum: return make_sum(simplify(x.left()), simplify(x.right()));
    case Op::Seq: return make_seq(simplify(x.left()), simplify(x.right()));
    case Op::Par: return make_par(simplify(x.left()), simplify(x.right()));
    case Op::Star: return make_star(simplify(x.body()));
    case Op::ParStar: return make_parstar(simplify(x.body()));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Structural measures

bool nullable(const Expr& x) {
  switch (x.op()) {
    case Op::Zero:
    case Op::Letter: return false;
    case Op::One:
    case Op::Star:
    case Op::ParStar: return true;
    case Op::Sum: return nullable(x.left()) || nullable(x.right());
    case Op::Seq:
    case Op::Par: return nullable(x.left()) && nullable(x.right());
  }
  return false;
}

std::size_t par_depth(const Expr& x) {
  switch (x.op()) {
    case Op::Sum:
    case Op::Seq: return std::max(par_depth(x.left()), par_depth(x.right()));
    case Op::Par: return std::max(par_depth(x.left()), par_depth(x.right())) + 1;
    case Op::Star:
    case Op::ParStar: return par_depth(x.body());
    default: return 0;
  }
}

std::size_t parstar_depth(const Expr& x) {
  switch (x.op()) {
    case Op::Sum:
    case Op::Seq:
    case Op::Par: return std::max(parstar_depth(x.left()), parstar_depth(x.right()));
    case Op::Star: return parstar_depth(x.body());
    case Op::ParStar: return parstar_depth(x.body()) + 1;
    default: return 0;
  }
}

namespace {

void gather_letters(const Expr& x, std::set<Letter>& out) {
  if (x.op() == Op::Letter) {
    out.insert(x.letter());
  } else if (x.is_binary()) {
    gather_letters(x.left(), out);
    gather_letters(x.right(), out);
  } else if (x.is_unary()) {
    gather_letters(x.body(), out);
  }
}

}  // namespace

std::set<Letter> letters_of(const Expr& x) {
  std::set<Letter> out;
  gather_letters(x, out);
  return out;
}

bool is_par_free(const Expr& x) { return par_depth(x) == 0 && parstar_depth(x) == 0; }

Expr substitute(const Expr& x, const std::map<Letter, Expr>& env) {
  switch (x.op()) {
    case Op::Zero:
    case Op::One: return x;
    case Op::Letter: {
      auto it = env.find(x.letter());
      return it == env.end() ? x : it->second;
    }
    case Op::Sum: return Expr::sum(substitute(x.left(), env), substitute(x.right(), env));
    case Op::Seq: return Expr::seq(substitute(x.left(), env), substitute(x.right(), env));
    case Op::Par: return Expr::par(substitute(x.left(), env), substitute(x.right(), env));
    case Op::Star: return Expr::star(substitute(x.body(), env));
    case Op::ParStar: return Expr::parstar(substitute(x.body(), env));
  }
  return x;
}

}  // namespace stepauto
