#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proactive/eqm/eqm.hpp"
#include "proactive/hir/hir.hpp"
#include "proactive/model/dynamic_system.hpp"
#include "proactive/pddl/scenario.hpp"
#include "proactive/select/choose.hpp"

namespace proactive {

/// des'(s) = decrease_factor * des(s); des'(t) = des(t) + increase_factor * (1 - des(t)).
struct ScalingConfig {
  double decrease_factor = 0.5;
  double increase_factor = 0.5;

  /// Throws ScenarioError(invalid_parameter) outside [0,1) and (0,1].
  void validate() const;

  bool operator==(const ScalingConfig&) const = default;
};

enum class RunMode { hir, eqm, combined };

std::string_view to_string(RunMode mode);
/// "hir", "eqm" or "combined". Throws Error.
RunMode parse_run_mode(std::string_view text);

/// Everything the engine reasons with, compiled from a scenario.
struct Knowledge {
  DynamicSystem system;
  DesirabilityMap des;
  std::vector<Goal> goals;
  std::vector<GroundAction> actions;
  std::vector<ActionScheme> schemes;
  std::vector<CapabilitySubstitution> substitutions;
  ScalingConfig scaling;
  int horizon = 2;
  ChooseOrder order;

  /// Ground action by label, e.g. "gather(hat)". Null when unknown.
  const GroundAction* action(std::string_view label) const;
};

/// Throws ScenarioError when the scenario cannot be compiled.
Knowledge compile(const pddl::ScenarioFile& scenario);

struct HirResult {
  std::optional<Intention> intention;
  std::optional<RobotStep> step;
  std::optional<Opportunity> opportunity;
};

/// Recognizes the intention at `state` and turns the next robot step into a
/// type-0 opportunity under temporarily rescaled desirability. The shared
/// desirability map is only read.
HirResult hir_opp(const Knowledge& knowledge, const Predictor& predictor, StateIndex state);

/// The HIR opportunity (if any) followed by the EqM maximal set, unsorted.
std::vector<Opportunity> collect(const Knowledge& knowledge, const Predictor& predictor, StateIndex state,
                                 RunMode mode, std::optional<Intention>* intention = nullptr,
                                 std::optional<RobotStep>* step = nullptr);

/// Outcome of one evaluation of the current state.
struct Decision {
  std::optional<Intention> intention;
  std::optional<RobotStep> hir_step;
  /// Ranked best first. Opportunities acting in the current state carry its
  /// label as acting state.
  std::vector<Opportunity> opportunities;
  std::optional<Opportunity> chosen;
  /// The chosen opportunity acts in a future state and is not dispatched now.
  bool deferred = false;
  /// Message for the human when the chosen opportunity came from a substitution.
  std::optional<std::string> message;
};

/// Evaluates an observed state. `current.id` is its display label; an unlisted
/// state is reasoned about as an extra sink.
Decision evaluate(const Knowledge& knowledge, const WorldState& current, RunMode mode);

/// Runs the decision procedure only when the observed state differs from the
/// last one seen.
class ActionSelector {
 public:
  ActionSelector(const Knowledge& knowledge, RunMode mode) : knowledge_(knowledge), mode_(mode) {}

  std::optional<Decision> observe(const WorldState& current);
  /// Records the state produced by a dispatched action without evaluating it.
  void acknowledge(const WorldState& current) { last_ = current.atoms; }
  void set_mode(RunMode mode) { mode_ = mode; }
  void reset() { last_.reset(); }

 private:
  const Knowledge& knowledge_;
  RunMode mode_;
  std::optional<AtomSet> last_;
};

}  // namespace proactive
