// Textual notation for pomsets and step words.
//
//   pomset := par
//   par    := seq { "||" seq }
//   seq    := atom { "." atom }
//   atom   := "1" | LETTER | "(" par ")"
//
//   word   := "1" | step { "." step }
//   step   := LETTER | "<" LETTER { "," LETTER } ">"

#include <algorithm>
#include <cctype>

#include "stepauto/error.hpp"
#include "stepauto/pomset.hpp"

namespace stepauto {

namespace {

std::string sp_text(const Pomset& u) {
  if (u.empty()) return "1";
  if (u.is_primitive()) return std::string(1, u.poset().label(0));
  if (is_parallel(u)) {
    std::vector<std::string> parts;
    for (const Pomset& f : par_factorize(u)) parts.push_back(sp_text(f));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += "||";
      out += parts[i];
    }
    return out;
  }
  std::string out;
  bool first = true;
  for (const Pomset& f : seq_factorize(u)) {
    if (!first) out += '.';
    first = false;
    std::string t = sp_text(f);
    out += is_parallel(f) ? "(" + t + ")" : t;
  }
  return out;
}

std::string raw_text(const Pomset& u) {
  const LabelledPoset& p = u.poset();
  std::string out = "{" + p.labels() + ":";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      if (!first) out += ',';
      first = false;
      out += std::to_string(i) + "<" + std::to_string(j);
    }
  }
  return out + "}";
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  char take() { return text_[pos_++]; }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }

Pomset parse_par(Cursor& c);

Pomset parse_atom(Cursor& c) {
  char ch = c.peek();
  if (ch == '(') {
    c.take();
    Pomset inner = parse_par(c);
    c.expect(")");
    return inner;
  }
  if (ch == '1') {
    c.take();
    return Pomset();
  }
  if (is_letter(ch)) {
    c.take();
    return Pomset::letter(ch);
  }
  if (ch == '\0') c.fail("unexpected end of input");
  c.fail(std::string("unexpected symbol '") + ch + "'");
}

Pomset parse_seq(Cursor& c) {
  Pomset acc = parse_atom(c);
  while (c.peek() == '.') {
    c.take();
    acc = seq_compose(acc, parse_atom(c));
  }
  return acc;
}

Pomset parse_par(Cursor& c) {
  Pomset acc = parse_seq(c);
  while (c.accept("||")) acc = par_compose(acc, parse_seq(c));
  return acc;
}

}  // namespace

std::string Pomset::to_string() const {
  return is_series_parallel(*this) ? sp_text(*this) : raw_text(*this);
}

Pomset parse_pomset(std::string_view text) {
  Cursor c(text);
  Pomset p = parse_par(c);
  if (!c.at_end()) c.fail("trailing input");
  return p;
}

StepWord parse_step_word(std::string_view text) {
  Cursor c(text);
  StepWord word;
  if (c.peek() == '1') {
    c.take();
    if (!c.at_end()) c.fail("trailing input");
    return word;
  }
  for (;;) {
    char ch = c.peek();
    if (ch == '<') {
      c.take();
      std::string letters;
      for (;;) {
        char l = c.peek();
        if (!is_letter(l)) c.fail("expected a letter inside step");
        letters += c.take();
        if (c.accept(">")) break;
        c.expect(",");
      }
      word.emplace_back(std::move(letters));
    } else if (is_letter(ch)) {
      word.emplace_back(std::string(1, c.take()));
    } else if (ch == '\0') {
      c.fail("unexpected end of input");
    } else {
      c.fail(std::string("unexpected symbol '") + ch + "'");
    }
    if (c.at_end()) break;
    c.expect(".");
  }
  return word;
}

}  // namespace stepauto
