#pragma once

#include <map>
#include <string>
#include <vector>

#include "proactive/model/atom.hpp"

namespace proactive {

/// Boolean precondition formula over atoms (and / or / not).
class Formula {
 public:
  enum class Kind { atom, conjunction, disjunction, negation };

  /// The empty conjunction, which every state satisfies.
  Formula();

  static Formula of(Atom atom);
  static Formula all_of(std::vector<Formula> operands);
  static Formula any_of(std::vector<Formula> operands);
  static Formula negation(Formula operand);

  Kind kind() const noexcept { return kind_; }
  const Atom& atom() const noexcept { return atom_; }
  const std::vector<Formula>& operands() const noexcept { return operands_; }

  bool operator==(const Formula&) const = default;

 private:
  Kind kind_ = Kind::conjunction;
  Atom atom_;
  std::vector<Formula> operands_;
};

/// Closed-world evaluation: an atom holds iff it is in `state`.
bool satisfies(const AtomSet& state, const Formula& formula);

/// Every atom mentioned anywhere in the formula, regardless of polarity.
void collect_atoms(const Formula& formula, AtomSet& out);

/// Replaces variables by the objects they are bound to.
Formula instantiate(const Formula& formula, const std::map<std::string, std::string>& binding);
Atom instantiate(const Atom& atom, const std::map<std::string, std::string>& binding);

/// PDDL rendering, e.g. "(and (not (gathered ?o)) (human-at-home))".
std::string to_string(const Formula& formula);

}  // namespace proactive
