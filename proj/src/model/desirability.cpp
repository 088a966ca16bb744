#include "proactive/model/desirability.hpp"

#include <fmt/format.h>

#include "proactive/error.hpp"

namespace proactive {

namespace {

void check_degree(std::string_view what, double degree) {
  if (!(degree >= 0.0 && degree <= 1.0))
    throw ScenarioError(ScenarioError::Kind::des_out_of_range,
                        fmt::format("des of {} is {}, outside [0, 1]", what, degree));
}

}  // namespace

DesirabilityMap::DesirabilityMap(std::map<std::string, double, std::less<>> entries, double fallback)
    : entries_(std::move(entries)), fallback_(fallback) {
  check_degree("unlisted states", fallback_);
  for (const auto& [id, degree] : entries_) check_degree(id, degree);
}

double DesirabilityMap::degree(std::string_view id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? fallback_ : it->second;
}

}  // namespace proactive
