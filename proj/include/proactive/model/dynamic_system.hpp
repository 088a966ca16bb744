#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proactive/model/action.hpp"
#include "proactive/model/atom.hpp"

namespace proactive {

/// A world state is fully determined by the atoms true in it. The id is a
/// display label only and takes no part in equality.
struct WorldState {
  std::string id;
  AtomSet atoms;

  bool operator==(const WorldState& other) const { return atoms == other.atoms; }
};

/// External input of the dynamic system. The null input drives the free run.
class InputLabel {
 public:
  enum class Kind { null_input, human_action, robot_action, environment };

  InputLabel() = default;
  static InputLabel null() { return {}; }
  static InputLabel human(std::string name) { return {Kind::human_action, std::move(name)}; }
  static InputLabel robot(std::string name) { return {Kind::robot_action, std::move(name)}; }
  static InputLabel environment(std::string name) { return {Kind::environment, std::move(name)}; }

  /// "null", "human:NAME", "robot:NAME" or "env:NAME". Throws Error.
  static InputLabel parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool is_null() const noexcept { return kind_ == Kind::null_input; }

  bool operator==(const InputLabel&) const = default;

 private:
  InputLabel(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_ = Kind::null_input;
  std::string name_;
};

std::string to_string(const InputLabel& label);

using StateIndex = std::size_t;

struct Transition {
  StateIndex from = 0;
  InputLabel label;
  StateIndex to = 0;

  bool operator==(const Transition&) const = default;
};

/// Σ = ⟨S, U, f⟩ over a finite, explicitly listed state set.
///
/// States are identified by their atom sets; two listed states with the same
/// atoms are rejected. A state without any null-input successor is completed
/// with an implicit self-loop, so the free run never dead-ends.
class DynamicSystem {
 public:
  DynamicSystem() = default;

  /// Throws ScenarioError on duplicate ids or atom sets and UnknownState on
  /// transitions whose endpoints are out of range.
  DynamicSystem(std::vector<WorldState> states, std::vector<Transition> transitions);

  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<WorldState>& states() const noexcept { return states_; }
  const WorldState& state(StateIndex index) const { return states_.at(index); }

  /// Authored transitions, without the implicit sink self-loops.
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  std::optional<StateIndex> find(const AtomSet& atoms) const;
  std::optional<StateIndex> find_id(std::string_view id) const;
  /// Throws UnknownState.
  StateIndex index_of(std::string_view id) const;

  /// Null-input successors in index order; never empty.
  const std::vector<StateIndex>& free_successors(StateIndex index) const { return free_.at(index); }

  /// Throws UnknownState when `state` is not one of the listed states.
  std::vector<WorldState> free_successors(const WorldState& state) const;

  bool completed_sink(StateIndex index) const { return sink_.at(index); }

  /// Copy of this system extended by one extra sink state. Used to reason
  /// about an observed state the model does not list.
  DynamicSystem with_sink(WorldState state) const;

 private:
  std::vector<WorldState> states_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<StateIndex>> free_;
  std::vector<bool> sink_;
  std::map<AtomSet, StateIndex> by_atoms_;
  std::map<std::string, StateIndex, std::less<>> by_id_;
};

/// Builds a free-run graph by closing `initial` under the given uncontrollable
/// actions (each application is a null-input transition). Every alternative of
/// a non-deterministic action becomes its own successor. States are named
/// "<prefix><n>" in discovery order. Throws Error when more than `max_states`
/// states are reachable.
DynamicSystem derive_free_run(const WorldState& initial, const std::vector<GroundAction>& uncontrollable,
                              std::size_t max_states = 100000, std::string_view prefix = "d");

}  // namespace proactive
