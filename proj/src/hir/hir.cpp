#include "proactive/hir/hir.hpp"

#include <algorithm>

#include "proactive/error.hpp"

namespace proactive {

std::vector<ResidualPlan> residual_plans(const AtomSet& state, const std::vector<Goal>& goals,
                                         const std::vector<GroundAction>& actions) {
  std::vector<ResidualPlan> out;
  out.reserve(goals.size());
  for (const auto& goal : goals) out.push_back({goal, shortest_plan(state, goal, actions, human_agents())});
  return out;
}

std::vector<Intention> intentions(const AtomSet& state, const std::vector<Goal>& goals,
                                  const std::vector<GroundAction>& actions) {
  auto plans = residual_plans(state, goals, actions);
  std::optional<std::size_t> best;
  for (const auto& residual : plans)
    if (residual.plan && (!best || residual.plan->length() < *best)) best = residual.plan->length();

  std::vector<Intention> out;
  if (!best) return out;
  for (auto& residual : plans)
    if (residual.plan && residual.plan->length() == *best)
      out.push_back({std::move(residual.goal), std::move(*residual.plan)});
  return out;
}

std::optional<Intention> recognize(const AtomSet& state, const std::vector<Goal>& goals,
                                   const std::vector<GroundAction>& actions) {
  auto candidates = intentions(state, goals, actions);
  if (candidates.size() != 1) return std::nullopt;
  return std::move(candidates.front());
}

RobotStep next_robot_step(const Intention& intention, const std::vector<CapabilitySubstitution>& substitutions,
                          const std::vector<GroundAction>& actions) {
  if (intention.residual_plan.steps.empty())
    throw Error("intention '" + intention.goal.name() + "' has an empty residual plan");
  const auto& first = intention.residual_plan.steps.front();
  if (robot_capable(first.agent)) return {first, std::nullopt};

  auto substitution = std::find_if(substitutions.begin(), substitutions.end(),
                                    [&](const auto& s) { return s.human_action == first.name; });
  if (substitution == substitutions.end()) throw NoSubstitution("no robot substitute for " + first.label());
  auto robot = std::find_if(actions.begin(), actions.end(), [&](const GroundAction& a) {
    return a.name == substitution->robot_action && a.args == first.args && robot_capable(a.agent);
  });
  if (robot == actions.end())
    throw NoSubstitution("substitute " + substitution->robot_action + " of " + first.label() + " is not available");
  return {*robot, substitution->message};
}

}  // namespace proactive
