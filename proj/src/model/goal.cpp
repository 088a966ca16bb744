#include "proactive/model/goal.hpp"

#include <algorithm>

#include "proactive/error.hpp"

namespace proactive {

Goal::Goal(std::string name, AtomSet atoms) : name_(std::move(name)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error("goal '" + name_ + "' has no atoms");
}

bool Goal::satisfied_by(const AtomSet& state) const {
  return std::includes(state.begin(), state.end(), atoms_.begin(), atoms_.end());
}

}  // namespace proactive
