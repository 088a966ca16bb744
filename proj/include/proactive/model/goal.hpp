#pragma once

#include <string>

#include "proactive/model/atom.hpp"

namespace proactive {

/// A human goal g: the atoms that must hold (possibly among others).
class Goal {
 public:
  Goal() = default;
  /// Throws Error when `atoms` is empty.
  Goal(std::string name, AtomSet atoms);

  const std::string& name() const noexcept { return name_; }
  const AtomSet& atoms() const noexcept { return atoms_; }

  bool satisfied_by(const AtomSet& state) const;

  bool operator==(const Goal&) const = default;

 private:
  std::string name_;
  AtomSet atoms_;
};

}  // namespace proactive
