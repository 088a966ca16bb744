#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proactive/model/atom.hpp"
#include "proactive/model/formula.hpp"

namespace proactive {

enum class AgentKind { human, robot, both };

std::string_view to_string(AgentKind agent);
std::optional<AgentKind> parse_agent(std::string_view text);

inline bool human_capable(AgentKind agent) { return agent != AgentKind::robot; }
inline bool robot_capable(AgentKind agent) { return agent != AgentKind::human; }

/// One effect alternative: atoms added and atoms deleted.
struct EffectList {
  AtomSet adds;
  AtomSet deletes;

  bool operator==(const EffectList&) const = default;
};

/// (state \ deletes) ∪ adds
AtomSet apply_effect(const AtomSet& state, const EffectList& effect);

/// A fully instantiated action. More than one effect alternative means the
/// action is non-deterministic.
struct GroundAction {
  std::string name;
  std::vector<std::string> args;
  AgentKind agent = AgentKind::both;
  Formula precondition;
  std::vector<EffectList> effects;

  /// "gather(water-bottle)", or the bare name for parameterless actions.
  std::string label() const;
  bool deterministic() const { return effects.size() == 1; }

  bool operator==(const GroundAction&) const = default;
};

bool applicable(const AtomSet& state, const GroundAction& action);

/// One successor per effect alternative, in declaration order.
/// Throws PreconditionViolated when the precondition does not hold.
std::vector<AtomSet> apply(const AtomSet& state, const GroundAction& action);

/// A robot capability seen as a partial function on states: defined on every
/// singleton {s} with s satisfying the precondition, mapping it to the set of
/// outcome states.
class ActionScheme {
 public:
  /// Empty unless the action can be executed by the robot.
  static std::optional<ActionScheme> from(GroundAction action);

  const GroundAction& action() const noexcept { return action_; }
  std::string label() const { return action_.label(); }

  bool operator==(const ActionScheme&) const = default;

 private:
  explicit ActionScheme(GroundAction action) : action_(std::move(action)) {}

  GroundAction action_;
};

std::vector<ActionScheme> robot_schemes(const std::vector<GroundAction>& actions);

}  // namespace proactive
