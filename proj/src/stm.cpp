#include "stepauto/stm.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "stepauto/error.hpp"

namespace stepauto {

namespace {

bool is_symbol(char c) { return c == '0' || c == '1' || c == kBlank; }

std::string blank_column(std::size_t k) { return std::string(k, kBlank); }

const std::string& column_at(const StmConfig& c, long col, const std::string& blank) {
  auto it = c.planar.find(col);
  return it == c.planar.end() ? blank : it->second;
}

void store_column(StmConfig& c, long col, std::string value) {
  if (std::all_of(value.begin(), value.end(), [](char s) { return s == kBlank; })) {
    c.planar.erase(col);
  } else {
    c.planar[col] = std::move(value);
  }
}

char input_symbol(const std::string& input, std::size_t pos) {
  if (pos == 0 || pos > input.size()) return kBlank;
  return input[pos - 1];
}

}  // namespace

void Stm::validate() const {
  std::set<std::string> known;
  for (const std::string& s : states) {
    if (s.empty()) throw FormatError("empty state name");
    if (!known.insert(s).second) throw FormatError("duplicate state '" + s + "'");
  }
  auto check_state = [&](const std::string& s) {
    if (!known.count(s)) throw FormatError("unknown state '" + s + "'");
  };
  auto check_source = [&](const std::string& s) {
    check_state(s);
    if (finals.count(s)) throw FormatError("rule leaves final state '" + s + "'");
  };
  auto check_row = [&](std::size_t r) {
    if (r < 1 || r > k) throw FormatError("cell row " + std::to_string(r) + " outside 1.." + std::to_string(k));
  };
  auto check_vector = [&](const std::string& v) {
    if (v.size() != k) throw FormatError("column vector must have " + std::to_string(k) + " entries");
    for (char c : v) {
      if (!is_symbol(c)) throw FormatError(std::string("invalid tape symbol '") + c + "'");
    }
  };
  if (k < 1) throw FormatError("k must be at least 1");
  check_state(initial);
  for (const std::string& f : finals) check_state(f);
  for (const StmReadRule& r : delta) {
    check_source(r.from);
    check_state(r.to);
    check_row(r.cell_row);
    if (!is_symbol(r.read)) throw FormatError(std::string("invalid tape symbol '") + r.read + "'");
  }
  for (const StmWriteRule& r : gamma) {
    check_source(r.from);
    check_state(r.to);
    check_row(r.cell_row);
  }
  for (const StmStepRule& r : eta) {
    check_source(r.from);
    check_state(r.to);
    check_vector(r.read);
    check_vector(r.write);
    for (char c : r.step.letters()) {
      if (c < 'a' || c > 'z') throw FormatError(std::string("invalid step letter '") + c + "'");
    }
  }
}

StmConfig initial_config(const Stm& m) {
  StmConfig c;
  c.control = m.initial;
  return c;
}

std::vector<StmSuccessor> successors(const Stm& m, const std::string& input,
                                     const StmConfig& c) {
  std::vector<StmSuccessor> out;
  if (m.finals.count(c.control)) return out;
  const std::string blank = blank_column(m.k);
  const std::string& column = column_at(c, c.head, blank);
  const char in = input_symbol(input, c.input_pos);

  for (const StmReadRule& r : m.delta) {
    if (r.from != c.control || r.read != in) continue;
    StmConfig n = c;
    n.control = r.to;
    std::string col = column;
    col[r.cell_row - 1] = in;
    store_column(n, n.head, std::move(col));
    n.input_pos = std::min(c.input_pos + 1, input.size() + 1);
    out.push_back({std::nullopt, std::move(n)});
  }
  for (const StmWriteRule& r : m.gamma) {
    if (r.from != c.control) continue;
    char cell = column[r.cell_row - 1];
    if (cell == kBlank) continue;
    StmConfig n = c;
    n.control = r.to;
    n.output.push_back(cell);
    out.push_back({std::nullopt, std::move(n)});
  }
  for (const StmStepRule& r : m.eta) {
    if (r.from != c.control || r.read != column) continue;
    StmConfig n = c;
    n.control = r.to;
    // The empty step leaves the planar contents as they are.
    if (!r.step.empty()) store_column(n, n.head, r.write);
    n.head += r.move == Move::Right ? 1 : -1;
    StmLabel label;
    if (!r.step.empty()) label = r.step;
    out.push_back({label, std::move(n)});
  }
  return out;
}

std::string to_string(StmStatus s) {
  switch (s) {
    case StmStatus::Accepted: return "accepted";
    case StmStatus::Rejected: return "rejected";
    case StmStatus::BoundExceeded: return "bound_exceeded";
  }
  return {};
}

namespace {

struct SearchNode {
  StmConfig config;
  StmLabel label;
  long parent;
};

void fill_accepted(const std::vector<SearchNode>& nodes, long last, StmOutcome& out) {
  std::vector<long> path;
  for (long i = last; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) path.push_back(i);
  std::reverse(path.begin(), path.end());
  out.status = StmStatus::Accepted;
  out.steps_used = path.size() - 1;
  out.output = nodes[static_cast<std::size_t>(last)].config.output;
  for (long i : path) {
    const SearchNode& n = nodes[static_cast<std::size_t>(i)];
    out.trace.push_back({n.label, n.config});
    if (n.label) out.word.push_back(*n.label);
  }
}

void check_input(const std::string& input) {
  for (char c : input) {
    if (c != '0' && c != '1') throw DomainError("input must be a word over {0,1}");
  }
}

}  // namespace

StmOutcome run(const Stm& m, const std::string& input, const StmRunOptions& options) {
  check_input(input);
  StmOutcome out;
  std::vector<SearchNode> nodes{{initial_config(m), std::nullopt, -1}};
  if (m.finals.count(m.initial)) {
    fill_accepted(nodes, 0, out);
    out.max_frontier = 1;
    return out;
  }
  std::set<StmConfig> seen{nodes[0].config};
  std::vector<long> frontier{0};
  for (std::size_t depth = 0;; ++depth) {
    out.max_frontier = std::max(out.max_frontier, frontier.size());
    if (frontier.empty()) {
      out.status = StmStatus::Rejected;
      out.steps_used = depth;
      return out;
    }
    if (depth == options.max_steps) {
      out.status = StmStatus::BoundExceeded;
      out.steps_used = depth;
      return out;
    }
    std::vector<long> next;
    for (long id : frontier) {
      StmConfig here = nodes[static_cast<std::size_t>(id)].config;
      for (StmSuccessor& s : successors(m, input, here)) {
        if (options.dedup && !seen.insert(s.config).second) continue;
        bool final = m.finals.count(s.config.control) != 0;
        nodes.push_back({std::move(s.config), s.label, id});
        long nid = static_cast<long>(nodes.size() - 1);
        if (final) {
          fill_accepted(nodes, nid, out);
          return out;
        }
        next.push_back(nid);
      }
    }
    frontier = std::move(next);
  }
}

std::set<StepWord> accepted_words_upto(const Stm& m, const std::string& input,
                                       std::size_t max_steps, bool dedup) {
  check_input(input);
  using Item = std::pair<StmConfig, StepWord>;
  std::set<StepWord> words;
  std::set<Item> seen;
  std::vector<Item> frontier{{initial_config(m), {}}};
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<Item> next;
    for (const Item& item : frontier) {
      if (m.finals.count(item.first.control)) {
        words.insert(item.second);
        continue;
      }
      if (depth == max_steps) continue;
      for (StmSuccessor& s : successors(m, input, item.first)) {
        Item n{std::move(s.config), item.second};
        if (s.label) n.second.push_back(*s.label);
        if (dedup && !seen.insert(n).second) continue;
        next.push_back(std::move(n));
      }
    }
    frontier = std::move(next);
  }
  return words;
}

namespace {

const char* const kBox = "□";

std::string cell_text(char c) { return c == kBlank ? kBox : std::string(1, c); }

std::string marked(char c, bool head) {
  return head ? "[" + cell_text(c) + "]" : cell_text(c);
}

}  // namespace

std::string render_config(const Stm& m, const std::string& input, const StmConfig& c) {
  std::ostringstream out;
  out << "  state   " << c.control << "\n";
  out << "  input   ";
  for (std::size_t i = 0; i <= input.size() + 1; ++i) {
    out << marked(input_symbol(input, i), i == c.input_pos);
  }
  out << "\n  output  ";
  if (!c.output.empty()) out << kBox << c.output;
  out << "[" << kBox << "]\n";

  long lo = c.head;
  long hi = c.head;
  if (!c.planar.empty()) {
    lo = std::min(lo, c.planar.begin()->first);
    hi = std::max(hi, c.planar.rbegin()->first);
  }
  const std::string blank = blank_column(m.k);
  for (std::size_t r = 0; r < m.k; ++r) {
    out << (m.k == 1 ? std::string("  planar  ") : "  row " + std::to_string(r + 1) + "   ");
    for (long col = lo - 1; col <= hi + 1; ++col) {
      out << marked(column_at(c, col, blank)[r], col == c.head);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_trace(const Stm& m, const std::string& input,
                         const std::vector<StmTraceEntry>& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << "step " << i;
    if (i > 0) out << " by " << (trace[i].label ? trace[i].label->to_string() : "1");
    out << "\n" << render_config(m, input, trace[i].config);
  }
  return out.str();
}

std::size_t count_steps_with(const StepWord& word, Letter letter) {
  return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [&](const Step& u) {
    return u.letters().find(letter) != std::string::npos;
  }));
}

// ---------------------------------------------------------------------------
// Classical machines

TmOutcome run_tm(const ClassicalTm& tm, const std::string& input, std::size_t max_steps) {
  check_input(input);
  std::map<long, char> tape;
  for (std::size_t i = 0; i < input.size(); ++i) tape[static_cast<long>(i)] = input[i];
  auto read = [&](long pos) {
    auto it = tape.find(pos);
    return it == tape.end() ? kBlank : it->second;
  };
  long head = -1;
  std::string state = tm.initial;
  TmOutcome out;
  for (;;) {
    char sym = read(head);
    auto rule = std::find_if(tm.rules.begin(), tm.rules.end(), [&](const TmRule& r) {
      return r.from == state && r.read == sym;
    });
    if (rule == tm.rules.end()) {
      if (tm.accepting.count(state)) {
        out.status = StmStatus::Accepted;
        for (long p = head; read(p) != kBlank; ++p) out.output.push_back(read(p));
      } else {
        out.status = StmStatus::Rejected;
      }
      return out;
    }
    if (out.steps == max_steps) {
      out.status = StmStatus::BoundExceeded;
      return out;
    }
    if (rule->write == kBlank) {
      tape.erase(head);
    } else {
      tape[head] = rule->write;
    }
    if (rule->move == 'L') --head;
    if (rule->move == 'R') ++head;
    state = rule->to;
    ++out.steps;
  }
}

Stm from_classical_tm(const ClassicalTm& tm) {
  for (const TmRule& r : tm.rules) {
    if (r.move != 'L' && r.move != 'R') {
      throw DomainError("unsupported move '" + std::string(1, r.move) + "' in rule from " + r.from);
    }
    if (tm.accepting.count(r.from)) {
      throw DomainError("accepting state " + r.from + " has outgoing rules");
    }
    if (!is_symbol(r.read) || !is_symbol(r.write)) throw DomainError("invalid tape symbol");
  }
  Stm m;
  m.k = 1;
  m.states = {"load_start", "load", "load_mv", "rewind_start", "rewind",
              "tm_pre",     "emit", "emit_mv", "done"};
  for (const std::string& s : tm.states) m.states.push_back("tm:" + s);
  m.initial = "load_start";
  m.finals = {"done"};

  auto move1 = [&](const std::string& from, char sym, Move mv, const std::string& to) {
    std::string v(1, sym);
    m.eta.push_back({from, Step(), v, v, mv, to});
  };

  // Load the input onto the planar tape, one column per symbol.
  m.delta.push_back({"load_start", kBlank, 1, "load"});
  m.delta.push_back({"load", '0', 1, "load_mv"});
  m.delta.push_back({"load", '1', 1, "load_mv"});
  m.delta.push_back({"load", kBlank, 1, "rewind_start"});
  move1("load_mv", '0', Move::Right, "load");
  move1("load_mv", '1', Move::Right, "load");

  // Return to the blank left of the input.
  move1("rewind_start", kBlank, Move::Left, "rewind");
  move1("rewind", '0', Move::Left, "rewind");
  move1("rewind", '1', Move::Left, "rewind");
  move1("rewind", kBlank, Move::Right, "tm_pre");
  for (char s : {'0', '1', kBlank}) move1("tm_pre", s, Move::Left, "tm:" + tm.initial);

  // The classical rules, one step <t> each.
  for (const TmRule& r : tm.rules) {
    m.eta.push_back({"tm:" + r.from, Step{'t'}, std::string(1, r.read), std::string(1, r.write),
                     r.move == 'L' ? Move::Left : Move::Right, "tm:" + r.to});
  }

  // Emit the word under and right of the head once an accepting state halts.
  auto emit_from = [&](const std::string& from) {
    m.gamma.push_back({from, 1, "emit_mv"});
    move1(from, kBlank, Move::Right, "done");
  };
  for (const std::string& h : tm.accepting) emit_from("tm:" + h);
  emit_from("emit");
  move1("emit_mv", '0', Move::Right, "emit");
  move1("emit_mv", '1', Move::Right, "emit");
  m.validate();
  return m;
}

}  // namespace stepauto
