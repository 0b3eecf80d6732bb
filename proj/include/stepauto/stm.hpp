#pragma once

// Step Turing machines.
//
// Besides its finite control, a machine has a read-only input tape, a
// write-only output tape and a planar tape of k rows whose columns are read
// and written as a whole by a single column head. Tape symbols are '0', '1'
// and the blank '_'; the empty symbol of rule vectors is the blank.
//
// Input tape positions run from 0 (the blank left of the input, where the
// head starts) through n + 1 (the blank after the input, where the head
// stays once it gets there).

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stepauto/pomset.hpp"

namespace stepauto {

inline constexpr char kBlank = '_';

enum class Move { Left, Right };

/// Reads the input symbol, copies it into planar cell (head column, row),
/// advances the input head.
struct StmReadRule {
  std::string from;
  char read;
  std::size_t cell_row;  // 1-based
  std::string to;
};

/// Appends the non-blank planar cell (head column, row) to the output.
struct StmWriteRule {
  std::string from;
  std::size_t cell_row;  // 1-based
  std::string to;
};

/// Matches the head column against `read`, executes the step, writes
/// `write` (unless the step is empty) and moves the head.
struct StmStepRule {
  std::string from;
  Step step;
  std::string read;   // k symbols
  std::string write;  // k symbols
  Move move;
  std::string to;
};

struct Stm {
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> finals;
  std::size_t k = 1;
  std::vector<StmReadRule> delta;
  std::vector<StmWriteRule> gamma;
  std::vector<StmStepRule> eta;

  /// Throws FormatError on unknown states, bad rows, wrong vector lengths,
  /// bad symbols or rules leaving a final state.
  void validate() const;
};

struct StmConfig {
  std::string control;
  std::size_t input_pos = 0;
  std::string output;
  /// Planar columns that are not all blank.
  std::map<long, std::string> planar;
  long head = 0;

  friend auto operator<=>(const StmConfig&, const StmConfig&) = default;
  friend bool operator==(const StmConfig&, const StmConfig&) = default;
};

/// A transition label: a step, or nullopt for the empty label 1.
using StmLabel = std::optional<Step>;

struct StmSuccessor {
  StmLabel label;
  StmConfig config;
};

StmConfig initial_config(const Stm& m);

/// One-step successors in rule order: input rules, output rules, step rules.
std::vector<StmSuccessor> successors(const Stm& m, const std::string& input,
                                     const StmConfig& c);

enum class StmStatus { Accepted, Rejected, BoundExceeded };

std::string to_string(StmStatus s);

struct StmTraceEntry {
  StmLabel label;  // label of the transition into this configuration
  StmConfig config;
};

struct StmOutcome {
  StmStatus status = StmStatus::Rejected;
  std::string output;
  StepWord word;
  std::size_t steps_used = 0;
  std::size_t max_frontier = 0;
  std::vector<StmTraceEntry> trace;
};

struct StmRunOptions {
  std::size_t max_steps = 10000;
  /// Skip configurations already seen.
  bool dedup = true;
};

/// Breadth-first search for the shallowest accepting run; ties go to the
/// earlier rule in the machine description.
StmOutcome run(const Stm& m, const std::string& input, const StmRunOptions& options = {});

/// Labels of all accepting runs of at most `max_steps` transitions.
std::set<StepWord> accepted_words_upto(const Stm& m, const std::string& input,
                                       std::size_t max_steps, bool dedup = true);

/// Per-configuration text with `[x]` marking head positions and `□` blanks.
std::string render_config(const Stm& m, const std::string& input, const StmConfig& c);
std::string render_trace(const Stm& m, const std::string& input,
                         const std::vector<StmTraceEntry>& trace);

/// Number of step-rule transitions in a run whose label contains `letter`.
std::size_t count_steps_with(const StepWord& word, Letter letter);

std::string stm_to_json(const Stm& m);
Stm stm_from_json(std::string_view text);

// Classical single-tape machines over {0, 1, _}. The head starts on the
// blank left of the input; the machine halts when no rule applies and
// accepts when it halts in an accepting state. The output is the word of
// non-blank symbols from the head rightwards.

struct TmRule {
  std::string from;
  char read;
  std::string to;
  char write;
  char move;  // 'L', 'R' or 'S'
};

struct ClassicalTm {
  std::vector<std::string> states;
  std::string initial;
  std::set<std::string> accepting;
  std::vector<TmRule> rules;
};

struct TmOutcome {
  StmStatus status = StmStatus::Rejected;
  std::string output;
  std::size_t steps = 0;
};

TmOutcome run_tm(const ClassicalTm& tm, const std::string& input, std::size_t max_steps);

/// k = 1 machine that loads the input onto the planar tape, simulates the
/// classical rules as steps <t>, and emits the result. Stay moves and
/// accepting states with outgoing rules are rejected.
Stm from_classical_tm(const ClassicalTm& tm);

namespace machines {

ClassicalTm increment_tm();
ClassicalTm identity_tm();
/// Accepts inputs with an even number of 1s, output = input.
ClassicalTm parity_tm();
ClassicalTm halting_tm();

/// Copies the input to the output one symbol at a time through cell (0, 1).
Stm copy_machine();
/// Step rules <a>, <b,c>, <d> on an untouched tape.
Stm fork_join_machine();
/// Bitwise NOT of k stacked rows. The input lists the tape column by column
/// (k symbols per column); the output has the same layout. The negation pass
/// uses one step <n,...,n> (k letters) per column.
Stm not_machine(std::size_t k);

}  // namespace machines

}  // namespace stepauto
