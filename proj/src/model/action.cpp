#include "proactive/model/action.hpp"

#include "proactive/error.hpp"

namespace proactive {

std::string_view to_string(AgentKind agent) {
  switch (agent) {
    case AgentKind::human:
      return "human";
    case AgentKind::robot:
      return "robot";
    case AgentKind::both:
      return "both";
  }
  return "both";
}

std::optional<AgentKind> parse_agent(std::string_view text) {
  if (text == "human") return AgentKind::human;
  if (text == "robot") return AgentKind::robot;
  if (text == "both") return AgentKind::both;
  return std::nullopt;
}

AtomSet apply_effect(const AtomSet& state, const EffectList& effect) {
  AtomSet out;
  for (const auto& atom : state)
    if (!effect.deletes.contains(atom)) out.insert(atom);
  out.insert(effect.adds.begin(), effect.adds.end());
  return out;
}

std::string GroundAction::label() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i];
  }
  return out + ")";
}

bool applicable(const AtomSet& state, const GroundAction& action) { return satisfies(state, action.precondition); }

std::vector<AtomSet> apply(const AtomSet& state, const GroundAction& action) {
  if (!applicable(state, action)) throw PreconditionViolated("precondition of " + action.label() + " does not hold");
  std::vector<AtomSet> out;
  out.reserve(action.effects.size());
  for (const auto& effect : action.effects) out.push_back(apply_effect(state, effect));
  return out;
}

std::optional<ActionScheme> ActionScheme::from(GroundAction action) {
  if (!robot_capable(action.agent)) return std::nullopt;
  return ActionScheme(std::move(action));
}

std::vector<ActionScheme> robot_schemes(const std::vector<GroundAction>& actions) {
  std::vector<ActionScheme> out;
  for (const auto& action : actions)
    if (auto scheme = ActionScheme::from(action)) out.push_back(std::move(*scheme));
  return out;
}

}  // namespace proactive
