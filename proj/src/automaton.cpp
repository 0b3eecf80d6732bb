#include "stepauto/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "stepauto/error.hpp"

namespace stepauto {

using StateId = StepAutomaton::StateId;

StateId StepAutomaton::add_state(const std::string& name, bool final) {
  auto it = ids_.find(name);
  if (it != ids_.end()) {
    if (final) finals_[it->second] = true;
    return it->second;
  }
  StateId id = names_.size();
  names_.push_back(name);
  ids_.emplace(name, id);
  finals_.push_back(final);
  delta_.emplace_back();
  gamma_.emplace_back();
  return id;
}

void StepAutomaton::set_final(const std::string& name, bool final) {
  finals_[index(name)] = final;
}

void StepAutomaton::add_delta(const std::string& from, Letter a, const std::string& to) {
  if (a < 'a' || a > 'z') throw DomainError(std::string("not a letter: '") + a + "'");
  StateId f = index(from);
  StateId t = index(to);
  delta_[f][a].insert(t);
}

void StepAutomaton::add_gamma(const std::string& from, const Step& u, const std::string& to) {
  if (u.empty()) throw DomainError("gamma transitions need a nonempty step");
  StateId f = index(from);
  StateId t = index(to);
  gamma_[f][u].insert(t);
}

bool StepAutomaton::has_state(std::string_view name) const {
  return ids_.count(std::string(name)) != 0;
}

StateId StepAutomaton::index(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) throw DomainError("unknown state: " + std::string(name));
  return it->second;
}

std::set<std::string> StepAutomaton::finals() const {
  std::set<std::string> out;
  for (StateId i = 0; i < size(); ++i) {
    if (finals_[i]) out.insert(names_[i]);
  }
  return out;
}

std::set<StateId> StepAutomaton::successors(StateId i) const {
  std::set<StateId> out;
  for (const auto& [a, ts] : delta_.at(i)) out.insert(ts.begin(), ts.end());
  for (const auto& [u, ts] : gamma_.at(i)) out.insert(ts.begin(), ts.end());
  return out;
}

std::set<Step> StepAutomaton::step_alphabet() const {
  std::set<Step> out;
  for (StateId i = 0; i < size(); ++i) {
    for (const auto& [a, ts] : delta_[i]) out.insert(Step{a});
    for (const auto& [u, ts] : gamma_[i]) out.insert(u);
  }
  return out;
}

std::size_t StepAutomaton::transition_count() const {
  std::size_t n = 0;
  for (StateId i = 0; i < size(); ++i) {
    for (const auto& [a, ts] : delta_[i]) n += ts.size();
    for (const auto& [u, ts] : gamma_[i]) n += ts.size();
  }
  return n;
}

bool StepAutomaton::finals_are_terminal() const {
  for (StateId i = 0; i < size(); ++i) {
    if (finals_[i] && (!delta_[i].empty() || !gamma_[i].empty())) return false;
  }
  return true;
}

std::set<StateId> run(const StepAutomaton& a, StateId q, const Step& u) {
  std::set<StateId> out;
  auto g = a.gamma(q).find(u);
  if (g != a.gamma(q).end()) out = g->second;
  if (u.is_singleton()) {
    auto d = a.delta(q).find(u.letters()[0]);
    if (d != a.delta(q).end()) out.insert(d->second.begin(), d->second.end());
  }
  return out;
}

std::set<std::string> run(const StepAutomaton& a, const std::string& q, const Step& u) {
  std::set<std::string> out;
  for (StateId t : run(a, a.index(q), u)) out.insert(a.name(t));
  return out;
}

bool accepts(const StepAutomaton& a, const std::string& q, const StepWord& w) {
  std::set<StateId> current{a.index(q)};
  for (const Step& u : w) {
    std::set<StateId> next;
    for (StateId s : current) {
      auto t = run(a, s, u);
      next.insert(t.begin(), t.end());
    }
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(),
                     [&](StateId s) { return a.is_final(s); });
}

std::set<StepWord> language_upto(const StepAutomaton& a, const std::string& q,
                                 std::size_t max_len) {
  std::set<StepWord> out;
  StepWord word;
  // Paths are enumerated transition by transition; a (state, word) pair is
  // expanded once so that nondeterministic duplicates do not multiply.
  std::set<std::pair<StateId, StepWord>> seen;
  std::function<void(StateId)> walk = [&](StateId s) {
    if (!seen.emplace(s, word).second) return;
    if (a.is_final(s)) out.insert(word);
    if (word.size() == max_len) return;
    for (const auto& [l, ts] : a.delta(s)) {
      word.push_back(Step{l});
      for (StateId t : ts) walk(t);
      word.pop_back();
    }
    for (const auto& [u, ts] : a.gamma(s)) {
      word.push_back(u);
      for (StateId t : ts) walk(t);
      word.pop_back();
    }
  };
  walk(a.index(q));
  return out;
}

namespace {

std::vector<bool> reach_from(const StepAutomaton& a, StateId q) {
  std::vector<bool> seen(a.size(), false);
  std::deque<StateId> todo{q};
  seen[q] = true;
  while (!todo.empty()) {
    StateId s = todo.front();
    todo.pop_front();
    for (StateId t : a.successors(s)) {
      if (!seen[t]) {
        seen[t] = true;
        todo.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

std::set<std::string> support(const StepAutomaton& a, const std::string& q) {
  std::vector<bool> r = reach_from(a, a.index(q));
  std::set<std::string> out;
  for (StateId i = 0; i < a.size(); ++i) {
    if (r[i]) out.insert(a.name(i));
  }
  return out;
}

bool is_support_closed(const StepAutomaton& a, const std::set<std::string>& states) {
  for (const std::string& s : states) {
    for (StateId t : a.successors(a.index(s))) {
      if (!states.count(a.name(t))) return false;
    }
  }
  return true;
}

bool support_leq(const StepAutomaton& a, const std::string& q1, const std::string& q2) {
  return reach_from(a, a.index(q2))[a.index(q1)];
}

std::vector<std::pair<std::string, std::string>> non_recursive_transitions(
    const StepAutomaton& a) {
  std::vector<std::vector<bool>> reach;
  reach.reserve(a.size());
  for (StateId i = 0; i < a.size(); ++i) reach.push_back(reach_from(a, i));
  std::vector<std::pair<std::string, std::string>> out;
  for (StateId s = 0; s < a.size(); ++s) {
    for (StateId t : a.successors(s)) {
      // t is below s by construction; it is strictly below unless s is
      // also in the support of t.
      if (reach[t][s]) out.emplace_back(a.name(s), a.name(t));
    }
  }
  return out;
}

bool is_well_nested(const StepAutomaton& a) { return non_recursive_transitions(a).empty(); }

StepAutomaton restrict(const StepAutomaton& a, const std::set<std::string>& states) {
  for (const std::string& s : states) a.index(s);
  if (!is_support_closed(a, states)) throw DomainError("state set is not support-closed");
  StepAutomaton out;
  for (StateId i = 0; i < a.size(); ++i) {
    if (states.count(a.name(i))) out.add_state(a.name(i), a.is_final(i));
  }
  for (StateId i = 0; i < a.size(); ++i) {
    if (!states.count(a.name(i))) continue;
    for (const auto& [l, ts] : a.delta(i)) {
      for (StateId t : ts) out.add_delta(a.name(i), l, a.name(t));
    }
    for (const auto& [u, ts] : a.gamma(i)) {
      for (StateId t : ts) out.add_gamma(a.name(i), u, a.name(t));
    }
  }
  return out;
}

}  // namespace stepauto
