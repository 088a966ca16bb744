#include "proactive/select/choose.hpp"

#include <algorithm>

#include "proactive/error.hpp"

namespace proactive {

namespace {

constexpr ChooseKey kDefaultKeys[] = {ChooseKey::degree, ChooseKey::type, ChooseKey::benefit, ChooseKey::lookahead,
                                      ChooseKey::name};

ChooseKey parse_key(const std::string& key) {
  if (key == "degree") return ChooseKey::degree;
  if (key == "type") return ChooseKey::type;
  if (key == "benefit") return ChooseKey::benefit;
  if (key == "lookahead") return ChooseKey::lookahead;
  if (key == "name") return ChooseKey::name;
  throw ScenarioError(ScenarioError::Kind::invalid_parameter, "unknown choose key '" + key + "'");
}

/// Negative when a ranks first, positive when b does.
template <typename T>
int ascending(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

std::string_view to_string(OpportunitySource source) { return source == OpportunitySource::hir ? "hir" : "eqm"; }

ChooseOrder::ChooseOrder() : keys_(std::begin(kDefaultKeys), std::end(kDefaultKeys)) {}

ChooseOrder::ChooseOrder(const std::vector<std::string>& keys) {
  for (const auto& key : keys) {
    auto parsed = parse_key(key);
    if (std::find(keys_.begin(), keys_.end(), parsed) != keys_.end())
      throw ScenarioError(ScenarioError::Kind::invalid_parameter, "choose key '" + key + "' repeated");
    keys_.push_back(parsed);
  }
  for (auto key : kDefaultKeys)
    if (std::find(keys_.begin(), keys_.end(), key) == keys_.end()) keys_.push_back(key);
}

bool ChooseOrder::before(const Opportunity& a, const Opportunity& b) const {
  for (auto key : keys_) {
    int c = 0;
    switch (key) {
      case ChooseKey::degree:
        c = ascending(b.degree, a.degree);
        break;
      case ChooseKey::type:
        c = ascending(a.type, b.type);
        break;
      case ChooseKey::benefit:
        c = ascending(b.benefit, a.benefit);
        break;
      case ChooseKey::lookahead:
        c = ascending(a.lookahead, b.lookahead);
        break;
      case ChooseKey::name:
        c = ascending(a.action, b.action);
        break;
    }
    if (c != 0) return c < 0;
  }
  if (int c = ascending(a.acting_state, b.acting_state); c != 0) return c < 0;
  return a.source == OpportunitySource::hir && b.source == OpportunitySource::eqm;
}

std::vector<Opportunity> rank(std::vector<Opportunity> opportunities, const ChooseOrder& order) {
  std::stable_sort(opportunities.begin(), opportunities.end(),
                   [&](const auto& a, const auto& b) { return order.before(a, b); });
  return opportunities;
}

std::optional<Opportunity> choose(const std::vector<Opportunity>& opportunities, const ChooseOrder& order) {
  if (opportunities.empty()) return std::nullopt;
  return *std::min_element(opportunities.begin(), opportunities.end(),
                           [&](const auto& a, const auto& b) { return order.before(a, b); });
}

}  // namespace proactive
