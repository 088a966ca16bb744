#include "proactive/model/formula.hpp"

#include <algorithm>

namespace proactive {

Formula::Formula() = default;

Formula Formula::of(Atom atom) {
  Formula f;
  f.kind_ = Kind::atom;
  f.atom_ = std::move(atom);
  return f;
}

Formula Formula::all_of(std::vector<Formula> operands) {
  Formula f;
  f.kind_ = Kind::conjunction;
  f.operands_ = std::move(operands);
  return f;
}

Formula Formula::any_of(std::vector<Formula> operands) {
  Formula f;
  f.kind_ = Kind::disjunction;
  f.operands_ = std::move(operands);
  return f;
}

Formula Formula::negation(Formula operand) {
  Formula f;
  f.kind_ = Kind::negation;
  f.operands_.push_back(std::move(operand));
  return f;
}

bool satisfies(const AtomSet& state, const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::atom:
      return state.contains(formula.atom());
    case Formula::Kind::conjunction:
      return std::all_of(formula.operands().begin(), formula.operands().end(),
                         [&](const Formula& f) { return satisfies(state, f); });
    case Formula::Kind::disjunction:
      return std::any_of(formula.operands().begin(), formula.operands().end(),
                         [&](const Formula& f) { return satisfies(state, f); });
    case Formula::Kind::negation:
      return !satisfies(state, formula.operands().front());
  }
  return false;
}

void collect_atoms(const Formula& formula, AtomSet& out) {
  if (formula.kind() == Formula::Kind::atom) {
    out.insert(formula.atom());
    return;
  }
  for (const auto& operand : formula.operands()) collect_atoms(operand, out);
}

Atom instantiate(const Atom& atom, const std::map<std::string, std::string>& binding) {
  Atom out{atom.name, {}};
  out.args.reserve(atom.args.size());
  for (const auto& arg : atom.args) {
    auto it = binding.find(arg);
    out.args.push_back(it == binding.end() ? arg : it->second);
  }
  return out;
}

Formula instantiate(const Formula& formula, const std::map<std::string, std::string>& binding) {
  switch (formula.kind()) {
    case Formula::Kind::atom:
      return Formula::of(instantiate(formula.atom(), binding));
    case Formula::Kind::negation:
      return Formula::negation(instantiate(formula.operands().front(), binding));
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::vector<Formula> operands;
      operands.reserve(formula.operands().size());
      for (const auto& operand : formula.operands()) operands.push_back(instantiate(operand, binding));
      return formula.kind() == Formula::Kind::conjunction ? Formula::all_of(std::move(operands))
                                                          : Formula::any_of(std::move(operands));
    }
  }
  return formula;
}

std::string to_string(const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::atom:
      return to_string(formula.atom());
    case Formula::Kind::negation:
      return "(not " + to_string(formula.operands().front()) + ")";
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::string out = formula.kind() == Formula::Kind::conjunction ? "(and" : "(or";
      for (const auto& operand : formula.operands()) out += " " + to_string(operand);
      return out + ")";
    }
  }
  return {};
}

}  // namespace proactive
