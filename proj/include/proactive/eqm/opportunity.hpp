#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace proactive {

enum class OpportunitySource { hir, eqm };

std::string_view to_string(OpportunitySource source);

/// ⟨α, acting state, type, lookahead, degree, benefit⟩. Produced by both
/// intention recognition (always type 0, lookahead 0) and equilibrium
/// maintenance, and ranked on one scale.
struct Opportunity {
  OpportunitySource source = OpportunitySource::eqm;
  std::string action;
  std::string acting_state;
  int type = 0;
  int lookahead = 0;
  double degree = 0.0;
  double benefit = 0.0;

  bool operator==(const Opportunity&) const = default;
};

}  // namespace proactive
