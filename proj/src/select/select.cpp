#include "proactive/select/select.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "proactive/error.hpp"

namespace proactive {

void ScalingConfig::validate() const {
  if (!(decrease_factor >= 0.0 && decrease_factor < 1.0))
    throw ScenarioError(ScenarioError::Kind::invalid_parameter,
                        fmt::format("decrease_factor {} is outside [0, 1)", decrease_factor));
  if (!(increase_factor > 0.0 && increase_factor <= 1.0))
    throw ScenarioError(ScenarioError::Kind::invalid_parameter,
                        fmt::format("increase_factor {} is outside (0, 1]", increase_factor));
}

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::hir:
      return "hir";
    case RunMode::eqm:
      return "eqm";
    case RunMode::combined:
      return "combined";
  }
  return "combined";
}

RunMode parse_run_mode(std::string_view text) {
  if (text == "hir") return RunMode::hir;
  if (text == "eqm") return RunMode::eqm;
  if (text == "combined") return RunMode::combined;
  throw Error(fmt::format("unknown mode '{}'; expected hir, eqm or combined", text));
}

const GroundAction* Knowledge::action(std::string_view label) const {
  auto it = std::find_if(actions.begin(), actions.end(), [&](const auto& a) { return a.label() == label; });
  return it == actions.end() ? nullptr : &*it;
}

namespace {

DynamicSystem explicit_system(const pddl::ScenarioFile& scenario) {
  std::vector<WorldState> states;
  std::map<std::string, StateIndex, std::less<>> index;
  for (const auto& spec : scenario.states) {
    index.emplace(spec.id, states.size());
    states.push_back(WorldState{spec.id, spec.atoms});
  }
  std::vector<Transition> transitions;
  for (const auto& edge : scenario.edges)
    transitions.push_back(Transition{index.at(edge.from), InputLabel::parse(edge.label), index.at(edge.to)});
  return DynamicSystem(std::move(states), std::move(transitions));
}

/// Closure of the initial state under the uncontrollable actions; derived
/// states matching a listed state take its id.
DynamicSystem derived_system(const pddl::ScenarioFile& scenario, const std::vector<GroundAction>& actions) {
  std::vector<GroundAction> uncontrollable;
  for (const auto& action : actions)
    if (std::find(scenario.uncontrollable.begin(), scenario.uncontrollable.end(), action.name) !=
        scenario.uncontrollable.end())
      uncontrollable.push_back(action);
  auto derived = derive_free_run(WorldState{"", scenario.problem_model.init}, uncontrollable);

  std::vector<WorldState> states = derived.states();
  for (auto& state : states)
    for (const auto& spec : scenario.states)
      if (spec.atoms == state.atoms) state.id = spec.id;
  return DynamicSystem(std::move(states), derived.transitions());
}

}  // namespace

Knowledge compile(const pddl::ScenarioFile& scenario) {
  Knowledge knowledge;
  knowledge.actions = pddl::ground(scenario.domain_model, scenario.problem_model.objects);
  knowledge.schemes = robot_schemes(knowledge.actions);
  knowledge.system = scenario.free_run == pddl::FreeRunMode::derived ? derived_system(scenario, knowledge.actions)
                                                                      : explicit_system(scenario);

  std::map<std::string, double, std::less<>> des;
  for (const auto& spec : scenario.states) des.emplace(spec.id, spec.des);
  knowledge.des = DesirabilityMap(std::move(des), scenario.default_des);

  for (const auto& goal : scenario.goals) knowledge.goals.emplace_back(goal.name, goal.atoms);
  for (const auto& s : scenario.substitutions)
    knowledge.substitutions.push_back({s.human_action, s.robot_action, s.message});
  knowledge.scaling = {scenario.engine.decrease_factor, scenario.engine.increase_factor};
  knowledge.scaling.validate();
  knowledge.horizon = scenario.engine.K;
  knowledge.order = ChooseOrder(scenario.engine.choose_order);
  return knowledge;
}

HirResult hir_opp(const Knowledge& knowledge, const Predictor& predictor, StateIndex state) {
  HirResult result;
  const auto& system = predictor.system();
  const auto& atoms = system.state(state).atoms;
  result.intention = recognize(atoms, knowledge.goals, knowledge.actions);
  if (!result.intention || result.intention->residual_plan.steps.empty()) return result;

  try {
    result.step = next_robot_step(*result.intention, knowledge.substitutions, knowledge.actions);
  } catch (const NoSubstitution& e) {
    spdlog::debug("no robot step for intention {}: {}", result.intention->goal.name(), e.what());
    return result;
  }
  const auto& action = result.step->action;
  if (!applicable(atoms, action)) return result;

  const auto& des = predictor.desirability();
  const double decreased = knowledge.scaling.decrease_factor * predictor.des(state);
  double benefit = 1.0;
  bool first = true;
  for (const auto& outcome : proactive::apply(atoms, action)) {
    auto index = system.find(outcome);
    double d = index ? predictor.des(*index) : des.fallback();
    double increased = d + knowledge.scaling.increase_factor * (1 - d);
    benefit = first ? increased : std::min(benefit, increased);
    first = false;
  }
  result.opportunity = Opportunity{OpportunitySource::hir, action.label(), system.state(state).id, 0, 0,
                                   std::min(1 - decreased, benefit), benefit};
  return result;
}

std::vector<Opportunity> collect(const Knowledge& knowledge, const Predictor& predictor, StateIndex state,
                                 RunMode mode, std::optional<Intention>* intention,
                                 std::optional<RobotStep>* step) {
  std::vector<Opportunity> out;
  if (mode != RunMode::eqm) {
    auto hir = hir_opp(knowledge, predictor, state);
    if (hir.opportunity) out.push_back(*hir.opportunity);
    if (intention) *intention = std::move(hir.intention);
    if (step) *step = std::move(hir.step);
  }
  if (mode != RunMode::hir) {
    std::vector<SchemeTable> tables;
    tables.reserve(knowledge.schemes.size());
    for (const auto& scheme : knowledge.schemes) tables.push_back(SchemeTable::from(scheme, predictor.system()));
    auto maximal = equilibrium(predictor, state, knowledge.horizon, tables).maximal();
    out.insert(out.end(), maximal.begin(), maximal.end());
  }
  return out;
}

Decision evaluate(const Knowledge& knowledge, const WorldState& current, RunMode mode) {
  const auto listed = knowledge.system.find(current.atoms);
  const DynamicSystem extended = listed ? DynamicSystem{} : knowledge.system.with_sink(current);
  const DynamicSystem& system = listed ? knowledge.system : extended;
  const StateIndex state = listed ? *listed : system.size() - 1;
  const Predictor predictor(system, knowledge.des);

  Decision decision;
  auto opportunities = collect(knowledge, predictor, state, mode, &decision.intention, &decision.hir_step);
  const auto& own_id = system.state(state).id;
  for (auto& opportunity : opportunities)
    if (opportunity.acting_state == own_id) opportunity.acting_state = current.id;

  decision.opportunities = rank(std::move(opportunities), knowledge.order);
  if (!decision.opportunities.empty()) {
    decision.chosen = decision.opportunities.front();
    decision.deferred = decision.chosen->acting_state != current.id;
    if (decision.chosen->source == OpportunitySource::hir && decision.hir_step)
      decision.message = decision.hir_step->message;
  }
  return decision;
}

std::optional<Decision> ActionSelector::observe(const WorldState& current) {
  if (last_ && *last_ == current.atoms) return std::nullopt;
  last_ = current.atoms;
  return evaluate(knowledge_, current, mode_);
}

}  // namespace proactive
