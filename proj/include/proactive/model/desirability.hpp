#pragma once

#include <map>
#include <string>
#include <string_view>

namespace proactive {

/// Fuzzy set Des over states, keyed by state id. Ids without an entry take
/// the fallback degree.
class DesirabilityMap {
 public:
  DesirabilityMap() = default;
  /// Throws ScenarioError(des_out_of_range) when a degree leaves [0, 1].
  DesirabilityMap(std::map<std::string, double, std::less<>> entries, double fallback);

  double degree(std::string_view id) const;
  double fallback() const noexcept { return fallback_; }
  const std::map<std::string, double, std::less<>>& entries() const noexcept { return entries_; }

  bool operator==(const DesirabilityMap&) const = default;

 private:
  std::map<std::string, double, std::less<>> entries_;
  double fallback_ = 0.0;
};

}  // namespace proactive
