#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proactive/model/action.hpp"
#include "proactive/model/goal.hpp"

namespace proactive {

struct Plan {
  std::vector<GroundAction> steps;

  std::size_t length() const noexcept { return steps.size(); }
  std::vector<std::string> labels() const;

  bool operator==(const Plan&) const = default;
};

using AgentSet = std::set<AgentKind>;

/// Actions a human can perform: tagged human or both.
inline AgentSet human_agents() { return {AgentKind::human, AgentKind::both}; }
inline AgentSet all_agents() { return {AgentKind::human, AgentKind::robot, AgentKind::both}; }

/// Breadth-first search under unit cost over the actions whose agent tag is in
/// `actors`. Successors are expanded in action order, stably sorted by name, so
/// the result is the least shortest plan in that order.
///
/// A non-deterministic action is usable in a state only when all its
/// alternatives agree on the relevant atoms (goal atoms and atoms mentioned by
/// any usable precondition); the first alternative is then taken.
/// Returns nullopt when no state satisfying the goal is reachable.
std::optional<Plan> shortest_plan(const AtomSet& start, const Goal& goal, const std::vector<GroundAction>& actions,
                                  const AgentSet& actors = all_agents());

}  // namespace proactive
