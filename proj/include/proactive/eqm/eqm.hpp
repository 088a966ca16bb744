#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proactive/eqm/opportunity.hpp"
#include "proactive/model/action.hpp"
#include "proactive/model/desirability.hpp"
#include "proactive/model/dynamic_system.hpp"
#include "proactive/select/choose.hpp"

namespace proactive {

/// An action scheme tabulated against one dynamic system. For each state the
/// entry is empty when the scheme is inapplicable, otherwise one outcome per
/// alternative: a state index, or nullopt for an outcome the system does not
/// list (such outcomes are sinks carrying the fallback des).
class SchemeTable {
 public:
  using Outcome = std::optional<StateIndex>;
  using Entry = std::optional<std::vector<Outcome>>;

  SchemeTable() = default;
  SchemeTable(std::string label, std::vector<Entry> entries);

  static SchemeTable from(const ActionScheme& scheme, const DynamicSystem& system);

  const std::string& label() const noexcept { return label_; }
  const Entry& at(StateIndex state) const { return entries_.at(state); }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::string label_;
  std::vector<Entry> entries_;
};

inline constexpr int kOpportunityTypes = 7;

struct OpportunityValue {
  double degree = 0.0;
  double benefit = 0.0;
  StateIndex acting_state = 0;
};

/// Free-run prediction and the fuzzy operators over one system and one Des.
/// Holds references; both must outlive the predictor. Caches free-run sets,
/// so a predictor must not be shared between threads.
class Predictor {
 public:
  Predictor(const DynamicSystem& system, const DesirabilityMap& des);

  const DynamicSystem& system() const noexcept { return system_; }
  const DesirabilityMap& desirability() const noexcept { return des_; }

  /// F^k(s) in index order.
  const std::vector<StateIndex>& free_run(StateIndex state, int k) const;

  double des(StateIndex state) const;
  /// Min over members. Throws Error on an empty set.
  double des_of(const std::vector<StateIndex>& states) const;

  /// bnf(α, s, k): min over outcomes t of α({s}) of Des(F^k(t)); 0 when α is
  /// inapplicable in s.
  double benefit(const SchemeTable& scheme, StateIndex state, int k) const;

  /// Opp_type(α, s, k). The acting state is s except for types 3 and 4, where
  /// it is the first future state attaining the max (3) or min (4).
  OpportunityValue opportunity(int type, const SchemeTable& scheme, StateIndex state, int k) const;

 private:
  const DynamicSystem& system_;
  const DesirabilityMap& des_;
  mutable std::map<std::pair<StateIndex, int>, std::vector<StateIndex>> free_run_cache_;
};

struct EquilibriumReport {
  StateIndex state = 0;
  int horizon = 0;
  double equilibrium = 1.0;
  double max_degree = 0.0;
  /// Per scheme: type 0 at k=0, then types 1..6 for each k in 1..K.
  std::vector<Opportunity> opportunities;

  /// Opportunities attaining the max degree; empty when the max is 0.
  std::vector<Opportunity> maximal() const;
};

/// Eq(s, K) = 1 - max degree over every scheme, type and lookahead.
EquilibriumReport equilibrium(const Predictor& predictor, StateIndex state, int horizon,
                              const std::vector<SchemeTable>& schemes);

/// The best maximal opportunity, or nullopt when Eq(s, K) = 1.
std::optional<Opportunity> eqm_step(const Predictor& predictor, StateIndex state, int horizon,
                                    const std::vector<SchemeTable>& schemes, const ChooseOrder& order);

}  // namespace proactive
