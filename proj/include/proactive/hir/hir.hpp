#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proactive/model/action.hpp"
#include "proactive/model/goal.hpp"
#include "proactive/planner/planner.hpp"

namespace proactive {

struct ResidualPlan {
  Goal goal;
  std::optional<Plan> plan;
};

/// A goal the human is taken to pursue, with the shortest plan left to reach it.
struct Intention {
  Goal goal;
  Plan residual_plan;
};

/// A human-only action and the robot action (same arguments) that stands in
/// for it, with the message the robot gives the human.
struct CapabilitySubstitution {
  std::string human_action;
  std::string robot_action;
  std::string message;
};

struct RobotStep {
  GroundAction action;
  std::optional<std::string> message;
};

/// One entry per goal, in goal order, planned with human-capable actions.
std::vector<ResidualPlan> residual_plans(const AtomSet& state, const std::vector<Goal>& goals,
                                         const std::vector<GroundAction>& actions);

/// All goals attaining the minimal residual length. Goals without a plan are
/// left out.
std::vector<Intention> intentions(const AtomSet& state, const std::vector<Goal>& goals,
                                  const std::vector<GroundAction>& actions);

/// The intention when exactly one goal attains the minimal residual length.
std::optional<Intention> recognize(const AtomSet& state, const std::vector<Goal>& goals,
                                   const std::vector<GroundAction>& actions);

/// First plan step if the robot can perform it, otherwise its substitute.
/// Throws Error on an empty plan and NoSubstitution when a human-only step
/// has no substitute among `actions`.
RobotStep next_robot_step(const Intention& intention, const std::vector<CapabilitySubstitution>& substitutions,
                          const std::vector<GroundAction>& actions);

}  // namespace proactive
