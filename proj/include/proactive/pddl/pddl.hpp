#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "proactive/error.hpp"
#include "proactive/model/action.hpp"
#include "proactive/model/atom.hpp"
#include "proactive/model/formula.hpp"
#include "proactive/model/goal.hpp"

namespace proactive::pddl {

struct PredicateSignature {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const PredicateSignature&) const = default;
};

/// An action over variables. Effect alternatives have the same shape as in
/// GroundAction; more than one alternative is a oneof effect.
struct LiftedAction {
  std::string name;
  std::vector<std::string> parameters;
  AgentKind agent = AgentKind::both;
  Formula precondition;
  std::vector<EffectList> effects;

  bool operator==(const LiftedAction&) const = default;
};

struct DomainModel {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<PredicateSignature> predicates;
  std::vector<LiftedAction> actions;

  const PredicateSignature* predicate(std::string_view name) const;
  const LiftedAction* action(std::string_view name) const;

  bool operator==(const DomainModel&) const = default;
};

struct ProblemModel {
  std::string name;
  std::string domain_name;
  std::vector<std::string> objects;
  AtomSet init;
  Formula goal;

  /// The goal as a conjunction of positive atoms. Throws Error otherwise.
  Goal goal_as(std::string name) const;

  bool operator==(const ProblemModel&) const = default;
};

/// Throws ParseError (always positioned) on lexical errors, unknown
/// constructs, undeclared predicates, arity mismatches and unbound variables.
DomainModel parse_domain(std::string_view text);

/// Throws ParseError on undeclared predicates or objects.
ProblemModel parse_problem(std::string_view text, const DomainModel& domain);

/// Canonical text. parse_domain(render(d)) == d.
std::string render(const DomainModel& domain);
std::string render(const ProblemModel& problem);

/// Every binding of every action over `objects`. Actions come out sorted by
/// lifted name (stable), bindings in odometer order over the object list with
/// the first parameter most significant.
std::vector<GroundAction> ground(const DomainModel& domain, const std::vector<std::string>& objects);

/// Checks an atom against the domain's predicates and an object list.
/// Returns an empty string when valid, otherwise the reason.
std::string check_atom(const Atom& atom, const DomainModel& domain, const std::vector<std::string>& objects);

}  // namespace proactive::pddl
