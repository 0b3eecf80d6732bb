#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stepauto/axioms.hpp"
#include "stepauto/error.hpp"
#include "stepauto/kleene.hpp"
#include "stepauto/stm.hpp"

namespace stepauto::cli {

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

struct Options {
  std::string expr;
  std::string expr2;
  std::string file;
  std::string word;
  std::string state;
  std::string input;
  std::string out_path;
  std::string dot_path;
  std::string inject;
  std::string machine;
  std::size_t size = 4;
  std::size_t len = 4;
  std::size_t width = kDefaultWidth;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::size_t max_steps = 10000;
  std::size_t k = 4;
  bool trace = false;
  bool no_dedup = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write '" + path + "'");
}

std::string pick_state(const StepAutomaton& a, const std::string& state) {
  if (!state.empty()) {
    if (!a.has_state(state)) throw FormatError("unknown state '" + state + "'");
    return state;
  }
  if (a.size() == 0) throw FormatError("automaton has no states");
  return a.states().front();
}

std::vector<std::string> sorted_words(const std::set<StepWord>& words) {
  std::vector<std::string> out;
  for (const StepWord& w : words) out.push_back(to_string(w));
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_parse(const Options& o, std::ostream& out) {
  Expr x = parse_expr(o.expr);
  out << x.ast() << "\n";
  return kYes;
}

int cmd_lang(const Options& o, std::ostream& out) {
  for (const std::string& t : semantics(parse_expr(o.expr), o.size).sorted_text()) {
    out << t << "\n";
  }
  return kYes;
}

int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
  CompileResult c = compile(parse_expr(o.expr), o.width);
  if (!o.out_path.empty()) write_file(o.out_path, automaton_to_json(c.automaton, c.initial));
  if (!o.dot_path.empty()) write_file(o.dot_path, automaton_to_dot(c.automaton, c.initial));
  out << "states " << c.automaton.size() << "\n";
  out << "transitions " << c.automaton.transition_count() << "\n";
  out << "initial " << c.initial << "\n";
  out << "well-nested " << (c.well_nested ? "yes" : "no") << "\n";
  if (c.cap_reached()) {
    err << "error: width cap W=" << c.width << " reached at";
    for (const Expr& x : c.capped) err << " " << x.text();
    err << "\n";
    return kUsage;
  }
  return kYes;
}

int cmd_accept(const Options& o, std::ostream& out) {
  StepAutomaton a = automaton_from_json(read_file(o.file));
  bool ok = accepts(a, pick_state(a, o.state), parse_step_word(o.word));
  out << (ok ? "accepted" : "rejected") << "\n";
  return ok ? kYes : kNo;
}

int cmd_words(const Options& o, std::ostream& out) {
  StepAutomaton a = automaton_from_json(read_file(o.file));
  for (const std::string& w : sorted_words(language_upto(a, pick_state(a, o.state), o.len))) {
    out << w << "\n";
  }
  return kYes;
}

int cmd_extract(const Options& o, std::ostream& out) {
  StepAutomaton a = automaton_from_json(read_file(o.file));
  out << extract(a, pick_state(a, o.state)).text() << "\n";
  return kYes;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  EquivResult r = equiv_bounded(parse_expr(o.expr), parse_expr(o.expr2), o.size);
  if (r.equal) {
    out << "equal\n";
    return kYes;
  }
  out << "different\n";
  out << "witness " << r.witness->to_string() << " (" << (r.witness_in_first ? "first" : "second")
      << " only)\n";
  return kNo;
}

int cmd_axioms(const Options& o, std::ostream& out) {
  AxiomSuiteConfig config;
  config.bound = o.size;
  config.samples = o.samples;
  config.seed = o.seed;
  if (o.inject == "par-as-seq") {
    config.interp = Interpretation::ParAsSeq;
  } else if (!o.inject.empty()) {
    throw Error("unknown injection '" + o.inject + "'");
  }
  bool all = true;
  for (const AxiomReport& r : run_axiom_suite(config)) {
    out << std::left << std::setw(4) << r.id << " " << std::setw(5)
        << (r.holds() ? "holds" : "fails") << " " << r.instances_checked << " instances";
    if (r.vacuous) out << ", " << r.vacuous << " vacuous";
    if (!r.holds()) {
      all = false;
      const Counterexample& c = *r.counterexample;
      out << "; witness " << c.witness.to_string() << " in " << c.where << " at "
          << to_string(c.env);
      if (find_axiom(r.id).kind == AxiomKind::Containment) {
        out << "; " << (r.holds_up_to_subsumption ? "holds" : "fails") << " up to subsumption";
      }
    }
    out << "\n";
  }
  return all ? kYes : kNo;
}

int cmd_stm_run(const Options& o, std::ostream& out) {
  Stm m = stm_from_json(read_file(o.file));
  StmRunOptions options;
  options.max_steps = o.max_steps;
  options.dedup = !o.no_dedup;
  StmOutcome r = run(m, o.input, options);
  out << to_string(r.status);
  if (r.status == StmStatus::Accepted) out << " " << (r.output.empty() ? "1" : r.output);
  out << "\n";
  if (r.status == StmStatus::Accepted) {
    out << "steps " << r.steps_used << "\n";
    out << "word " << to_string(r.word) << "\n";
  }
  if (o.trace && !r.trace.empty()) out << render_trace(m, o.input, r.trace);
  return r.status == StmStatus::Accepted ? kYes : kNo;
}

int cmd_stm_words(const Options& o, std::ostream& out) {
  Stm m = stm_from_json(read_file(o.file));
  auto words = accepted_words_upto(m, o.input, o.max_steps, !o.no_dedup);
  for (const std::string& w : sorted_words(words)) out << w << "\n";
  return kYes;
}

int cmd_stm_builtin(const Options& o, std::ostream& out) {
  Stm m;
  if (o.machine == "increment") {
    m = from_classical_tm(machines::increment_tm());
  } else if (o.machine == "identity") {
    m = from_classical_tm(machines::identity_tm());
  } else if (o.machine == "parity") {
    m = from_classical_tm(machines::parity_tm());
  } else if (o.machine == "halting") {
    m = from_classical_tm(machines::halting_tm());
  } else if (o.machine == "copy") {
    m = machines::copy_machine();
  } else if (o.machine == "fork_join") {
    m = machines::fork_join_machine();
  } else if (o.machine == "not") {
    if (o.k == 0) throw Error("--k must be positive");
    m = machines::not_machine(o.k);
  } else {
    throw Error("unknown machine '" + o.machine + "'");
  }
  std::string text = stm_to_json(m);
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
  }
  return kYes;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Step automata, series-parallel rational expressions and step Turing machines",
               "stepauto"};
  app.require_subcommand(1);

  auto* parse = app.add_subcommand("parse", "Print the syntax tree of an expression");
  parse->add_option("expr", o.expr)->required();

  auto* lang = app.add_subcommand("lang", "List the pomsets of an expression up to a size");
  lang->add_option("expr", o.expr)->required();
  lang->add_option("--size", o.size, "Node bound")->capture_default_str();

  auto* comp = app.add_subcommand("compile", "Build the syntactic step automaton");
  comp->add_option("expr", o.expr)->required();
  comp->add_option("--width", o.width, "Parallel star width cap")->capture_default_str();
  comp->add_option("--out", o.out_path, "Write the automaton as JSON");
  comp->add_option("--dot", o.dot_path, "Write the automaton as DOT");

  auto* acc = app.add_subcommand("accept", "Test a step word against an automaton file");
  acc->add_option("automaton", o.file)->required();
  acc->add_option("word", o.word)->required();
  acc->add_option("--state", o.state, "Start state (default: first listed)");

  auto* words = app.add_subcommand("words", "List accepted step words up to a length");
  words->add_option("automaton", o.file)->required();
  words->add_option("--len", o.len, "Maximum number of steps")->capture_default_str();
  words->add_option("--state", o.state, "Start state (default: first listed)");

  auto* ext = app.add_subcommand("extract", "Solve an automaton file for an expression");
  ext->add_option("automaton", o.file)->required();
  ext->add_option("--state", o.state, "Start state (default: first listed)");

  auto* equiv = app.add_subcommand("equiv", "Compare two expressions up to a size");
  equiv->add_option("expr1", o.expr)->required();
  equiv->add_option("expr2", o.expr2)->required();
  equiv->add_option("--size", o.size, "Node bound")->capture_default_str();

  auto* ax = app.add_subcommand("axioms", "Check the axioms on random instances");
  ax->add_option("--size", o.size, "Node bound")->capture_default_str();
  ax->add_option("--samples", o.samples, "Instances per axiom")->capture_default_str();
  ax->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  ax->add_option("--inject", o.inject)->group("");

  auto* stm = app.add_subcommand("stm", "Step Turing machines");
  stm->require_subcommand(1);
  auto* srun = stm->add_subcommand("run", "Run a machine file on an input");
  srun->add_option("machine", o.file)->required();
  srun->add_option("--input", o.input, "Input over {0,1}");
  srun->add_option("--max-steps", o.max_steps, "Search depth bound")->capture_default_str();
  srun->add_flag("--trace", o.trace, "Render the accepting run");
  srun->add_flag("--no-dedup", o.no_dedup, "Revisit configurations");
  auto* swords = stm->add_subcommand("words", "List the step words of accepting runs");
  swords->add_option("machine", o.file)->required();
  swords->add_option("--input", o.input, "Input over {0,1}");
  swords->add_option("--max-steps", o.max_steps, "Run length bound")->default_val(100);
  swords->add_flag("--no-dedup", o.no_dedup, "Revisit configurations");
  auto* builtin = stm->add_subcommand("builtin", "Print a built-in machine as JSON");
  builtin->add_option("name", o.machine,
                      "increment, identity, parity, halting, copy, fork_join or not")
      ->required();
  builtin->add_option("--k", o.k, "Rows of the NOT machine")->capture_default_str();
  builtin->add_option("--out", o.out_path, "Write to a file instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, out);
    if (lang->parsed()) return cmd_lang(o, out);
    if (comp->parsed()) return cmd_compile(o, out, err);
    if (acc->parsed()) return cmd_accept(o, out);
    if (words->parsed()) return cmd_words(o, out);
    if (ext->parsed()) return cmd_extract(o, out);
    if (equiv->parsed()) return cmd_equiv(o, out);
    if (ax->parsed()) return cmd_axioms(o, out);
    if (srun->parsed()) return cmd_stm_run(o, out);
    if (swords->parsed()) return cmd_stm_words(o, out);
    if (builtin->parsed()) return cmd_stm_builtin(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace stepauto::cli
