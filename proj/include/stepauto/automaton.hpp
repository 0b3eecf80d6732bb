#pragma once

// Step automata: letter transitions (delta) and step transitions (gamma)
// over string-named states.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stepauto/pomset.hpp"

namespace stepauto {

class StepAutomaton {
 public:
  using StateId = std::size_t;

  /// Adds a state (no-op if present) and returns its index.
  StateId add_state(const std::string& name, bool final = false);
  void set_final(const std::string& name, bool final = true);
  void add_delta(const std::string& from, Letter a, const std::string& to);
  /// Steps must be nonempty.
  void add_gamma(const std::string& from, const Step& u, const std::string& to);

  std::size_t size() const noexcept { return names_.size(); }
  bool has_state(std::string_view name) const;
  StateId index(std::string_view name) const;
  const std::string& name(StateId i) const { return names_.at(i); }
  /// State names in insertion order.
  const std::vector<std::string>& states() const noexcept { return names_; }

  bool is_final(StateId i) const { return finals_.at(i); }
  bool is_final(std::string_view name) const { return is_final(index(name)); }
  std::set<std::string> finals() const;

  const std::map<Letter, std::set<StateId>>& delta(StateId i) const { return delta_.at(i); }
  const std::map<Step, std::set<StateId>>& gamma(StateId i) const { return gamma_.at(i); }

  /// One-step targets through any transition.
  std::set<StateId> successors(StateId i) const;

  /// Gamma keys plus singleton steps for delta letters.
  std::set<Step> step_alphabet() const;

  std::size_t transition_count() const;

  /// True when no transition leaves a final state.
  bool finals_are_terminal() const;

  friend bool operator==(const StepAutomaton&, const StepAutomaton&) = default;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateId> ids_;
  std::vector<bool> finals_;
  std::vector<std::map<Letter, std::set<StateId>>> delta_;
  std::vector<std::map<Step, std::set<StateId>>> gamma_;
};

/// Targets of a unit run labelled `u` from `q`: gamma(q, u), together with
/// delta(q, a) when u is the singleton <a>.
std::set<std::string> run(const StepAutomaton& a, const std::string& q, const Step& u);
std::set<StepAutomaton::StateId> run(const StepAutomaton& a, StepAutomaton::StateId q,
                                     const Step& u);

/// Subset propagation along the word.
bool accepts(const StepAutomaton& a, const std::string& q, const StepWord& w);

/// Accepted words with at most `max_len` steps, by path enumeration.
std::set<StepWord> language_upto(const StepAutomaton& a, const std::string& q,
                                 std::size_t max_len);

/// States reachable from q, including q.
std::set<std::string> support(const StepAutomaton& a, const std::string& q);

bool is_support_closed(const StepAutomaton& a, const std::set<std::string>& states);

/// q1 precedes q2 in the support preorder: q1 lies in the support of q2.
bool support_leq(const StepAutomaton& a, const std::string& q1, const std::string& q2);

/// Every transition target is strictly below its source in the support
/// preorder.
bool is_well_nested(const StepAutomaton& a);

/// Transitions (source, target) whose target is not strictly below the source.
std::vector<std::pair<std::string, std::string>> non_recursive_transitions(
    const StepAutomaton& a);

/// Sub-automaton on a support-closed set of states.
StepAutomaton restrict(const StepAutomaton& a, const std::set<std::string>& states);

// Serialization. The JSON fields are `states`, `finals`, `delta` and
// `gamma`. When `initial` is given it is listed first among the states;
// readers treat the first listed state as the default initial state.
std::string automaton_to_json(const StepAutomaton& a,
                              const std::optional<std::string>& initial = std::nullopt);
StepAutomaton automaton_from_json(std::string_view text);
std::string automaton_to_dot(const StepAutomaton& a,
                             const std::optional<std::string>& initial = std::nullopt);

}  // namespace stepauto
