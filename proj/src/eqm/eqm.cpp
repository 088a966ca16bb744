#include "proactive/eqm/eqm.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "proactive/error.hpp"

namespace proactive {

SchemeTable::SchemeTable(std::string label, std::vector<Entry> entries)
    : label_(std::move(label)), entries_(std::move(entries)) {
  for (const auto& entry : entries_)
    if (entry && entry->empty()) throw Error("scheme '" + label_ + "' has an applicable state without outcomes");
}

SchemeTable SchemeTable::from(const ActionScheme& scheme, const DynamicSystem& system) {
  std::vector<Entry> entries;
  entries.reserve(system.size());
  for (const auto& state : system.states()) {
    if (!applicable(state.atoms, scheme.action())) {
      entries.emplace_back();
      continue;
    }
    std::vector<Outcome> outcomes;
    for (const auto& next : proactive::apply(state.atoms, scheme.action())) outcomes.push_back(system.find(next));
    entries.emplace_back(std::move(outcomes));
  }
  return SchemeTable(scheme.label(), std::move(entries));
}

Predictor::Predictor(const DynamicSystem& system, const DesirabilityMap& des) : system_(system), des_(des) {}

const std::vector<StateIndex>& Predictor::free_run(StateIndex state, int k) const {
  if (k < 0) throw std::invalid_argument("negative lookahead");
  auto key = std::make_pair(state, k);
  if (auto it = free_run_cache_.find(key); it != free_run_cache_.end()) return it->second;

  std::vector<StateIndex> reached;
  if (k == 0) {
    system_.state(state);
    reached.push_back(state);
  } else {
    std::vector<bool> member(system_.size(), false);
    for (auto previous : free_run(state, k - 1))
      for (auto next : system_.free_successors(previous)) member[next] = true;
    for (StateIndex i = 0; i < member.size(); ++i)
      if (member[i]) reached.push_back(i);
  }
  return free_run_cache_.emplace(key, std::move(reached)).first->second;
}

double Predictor::des(StateIndex state) const { return des_.degree(system_.state(state).id); }

double Predictor::des_of(const std::vector<StateIndex>& states) const {
  if (states.empty()) throw Error("desirability of an empty set of states");
  double lowest = des(states.front());
  for (auto state : states) lowest = std::min(lowest, des(state));
  return lowest;
}

double Predictor::benefit(const SchemeTable& scheme, StateIndex state, int k) const {
  const auto& entry = scheme.at(state);
  if (!entry) return 0.0;
  double lowest = 1.0;
  bool first = true;
  for (const auto& outcome : *entry) {
    double value = outcome ? des_of(free_run(*outcome, k)) : des_.fallback();
    lowest = first ? value : std::min(lowest, value);
    first = false;
  }
  return lowest;
}

OpportunityValue Predictor::opportunity(int type, const SchemeTable& scheme, StateIndex state, int k) const {
  if (type < 0 || type >= kOpportunityTypes) throw std::invalid_argument(fmt::format("no opportunity type {}", type));
  if (type == 0) {
    double b = benefit(scheme, state, 0);
    return {std::min(1 - des(state), b), b, state};
  }

  const auto& future = free_run(state, k);
  switch (type) {
    case 1:
    case 2: {
      double b = benefit(scheme, future.front(), 0);
      for (auto s : future) {
        double value = benefit(scheme, s, 0);
        b = type == 1 ? std::max(b, value) : std::min(b, value);
      }
      return {std::min(1 - des(state), b), b, state};
    }
    case 3:
    case 4: {
      StateIndex best = future.front();
      double best_degree = std::min(1 - des(best), benefit(scheme, best, 0));
      for (auto s : future) {
        double value = std::min(1 - des(s), benefit(scheme, s, 0));
        if ((type == 3 && value > best_degree) || (type == 4 && value < best_degree)) {
          best = s;
          best_degree = value;
        }
      }
      return {best_degree, benefit(scheme, best, 0), best};
    }
    default: {
      double u = 1 - des(future.front());
      for (auto s : future) u = type == 5 ? std::max(u, 1 - des(s)) : std::min(u, 1 - des(s));
      double b = benefit(scheme, state, k);
      return {std::min(u, b), b, state};
    }
  }
}

std::vector<Opportunity> EquilibriumReport::maximal() const {
  std::vector<Opportunity> out;
  if (max_degree <= 0.0) return out;
  for (const auto& opportunity : opportunities)
    if (opportunity.degree == max_degree) out.push_back(opportunity);
  return out;
}

EquilibriumReport equilibrium(const Predictor& predictor, StateIndex state, int horizon,
                              const std::vector<SchemeTable>& schemes) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  EquilibriumReport report;
  report.state = state;
  report.horizon = horizon;

  auto record = [&](const SchemeTable& scheme, int type, int k) {
    auto value = predictor.opportunity(type, scheme, state, k);
    report.opportunities.push_back(Opportunity{OpportunitySource::eqm, scheme.label(),
                                               predictor.system().state(value.acting_state).id, type, k,
                                               value.degree, value.benefit});
    report.max_degree = std::max(report.max_degree, value.degree);
  };
  for (const auto& scheme : schemes) {
    record(scheme, 0, 0);
    for (int k = 1; k <= horizon; ++k)
      for (int type = 1; type < kOpportunityTypes; ++type) record(scheme, type, k);
  }
  report.equilibrium = 1 - report.max_degree;
  return report;
}

std::optional<Opportunity> eqm_step(const Predictor& predictor, StateIndex state, int horizon,
                                    const std::vector<SchemeTable>& schemes, const ChooseOrder& order) {
  return choose(equilibrium(predictor, state, horizon, schemes).maximal(), order);
}

}  // namespace proactive
