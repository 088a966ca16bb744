#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proactive/eqm/opportunity.hpp"

namespace proactive {

enum class ChooseKey { degree, type, benefit, lookahead, name };

/// Ranking keys, best first: degree desc, type asc, benefit desc, lookahead
/// asc, action name asc. Keys missing from a custom order follow in default
/// order; acting state (asc) and source (hir first) close every comparison,
/// so the order is total over distinct opportunities.
class ChooseOrder {
 public:
  ChooseOrder();
  /// Throws ScenarioError(invalid_parameter) on unknown or repeated keys.
  explicit ChooseOrder(const std::vector<std::string>& keys);

  const std::vector<ChooseKey>& keys() const noexcept { return keys_; }

  /// True when `a` ranks strictly before `b`.
  bool before(const Opportunity& a, const Opportunity& b) const;

 private:
  std::vector<ChooseKey> keys_;
};

/// Sorted best first.
std::vector<Opportunity> rank(std::vector<Opportunity> opportunities, const ChooseOrder& order);

std::optional<Opportunity> choose(const std::vector<Opportunity>& opportunities, const ChooseOrder& order);

}  // namespace proactive
