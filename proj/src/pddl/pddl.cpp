#include "proactive/pddl/pddl.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "proactive/pddl/sexpr.hpp"

namespace proactive::pddl {

namespace {

const std::set<std::string, std::less<>> kRequirements = {
    ":strips", ":negative-preconditions", ":disjunctive-preconditions", ":non-deterministic", ":typing"};

[[noreturn]] void fail(const SExpr& at, const std::string& message) { throw ParseError(message, at.position); }

const SExpr& expect_list(const SExpr& expr, std::string_view what) {
  if (!expr.is_list()) fail(expr, fmt::format("expected {}", what));
  return expr;
}

const std::string& expect_symbol(const SExpr& expr, std::string_view what) {
  if (!expr.is_symbol()) fail(expr, fmt::format("expected {}", what));
  return expr.text;
}

/// "?a ?b - object ?c" and "a b - object" lists. Only the object type exists.
std::vector<std::string> parse_typed_list(const std::vector<SExpr>& items, std::size_t first, bool variables) {
  std::vector<std::string> names;
  for (std::size_t i = first; i < items.size(); ++i) {
    const auto& symbol = expect_symbol(items[i], variables ? "a variable" : "an object name");
    if (symbol == "-") {
      if (i + 1 >= items.size()) fail(items[i], "missing type after '-'");
      const auto& type = expect_symbol(items[i + 1], "a type name");
      if (type != "object") fail(items[i + 1], fmt::format("unsupported type '{}'; only object is allowed", type));
      ++i;
      continue;
    }
    if (variables != is_variable(symbol))
      fail(items[i], variables ? fmt::format("'{}' is not a variable", symbol)
                               : fmt::format("'{}' is a variable, expected an object", symbol));
    if (std::find(names.begin(), names.end(), symbol) != names.end())
      fail(items[i], fmt::format("'{}' declared twice", symbol));
    names.push_back(symbol);
  }
  return names;
}

/// Resolves atom arguments against either action parameters or problem objects.
struct Scope {
  const DomainModel* domain = nullptr;
  const std::vector<std::string>* names = nullptr;
  bool variables = true;
};

Atom parse_atom_expr(const SExpr& expr, const Scope& scope) {
  expect_list(expr, "an atom");
  if (expr.items.empty()) fail(expr, "empty atom");
  Atom atom;
  atom.name = expect_symbol(expr.items.front(), "a predicate name");
  const auto* signature = scope.domain->predicate(atom.name);
  if (!signature) fail(expr.items.front(), fmt::format("undeclared predicate '{}'", atom.name));
  if (signature->arity != expr.items.size() - 1)
    fail(expr, fmt::format("predicate '{}' takes {} argument(s), got {}", atom.name, signature->arity,
                           expr.items.size() - 1));
  for (std::size_t i = 1; i < expr.items.size(); ++i) {
    const auto& arg = expect_symbol(expr.items[i], "an argument");
    bool known = std::find(scope.names->begin(), scope.names->end(), arg) != scope.names->end();
    if (!known)
      fail(expr.items[i], scope.variables ? fmt::format("unbound variable '{}'", arg)
                                          : fmt::format("undeclared object '{}'", arg));
    atom.args.push_back(arg);
  }
  return atom;
}

Formula parse_formula(const SExpr& expr, const Scope& scope) {
  expect_list(expr, "a formula");
  if (expr.items.empty()) fail(expr, "empty formula");
  const auto& head = expr.items.front();
  if (head.is_symbol("and") || head.is_symbol("or")) {
    std::vector<Formula> operands;
    for (std::size_t i = 1; i < expr.items.size(); ++i) operands.push_back(parse_formula(expr.items[i], scope));
    return head.text == "and" ? Formula::all_of(std::move(operands)) : Formula::any_of(std::move(operands));
  }
  if (head.is_symbol("not")) {
    if (expr.items.size() != 2) fail(expr, "not takes exactly one operand");
    return Formula::negation(parse_formula(expr.items[1], scope));
  }
  if (head.is_symbol() && (head.text == "imply" || head.text == "forall" || head.text == "exists" ||
                           head.text == "when" || head.text == "=" || head.text == "oneof"))
    fail(head, fmt::format("unsupported construct '{}'", head.text));
  return Formula::of(parse_atom_expr(expr, scope));
}

void parse_literal(const SExpr& expr, const Scope& scope, EffectList& out) {
  expect_list(expr, "an effect literal");
  if (!expr.items.empty() && expr.items.front().is_symbol("not")) {
    if (expr.items.size() != 2) fail(expr, "not takes exactly one operand");
    out.deletes.insert(parse_atom_expr(expr.items[1], scope));
    return;
  }
  if (!expr.items.empty() && expr.items.front().is_symbol() &&
      (expr.items.front().text == "when" || expr.items.front().text == "forall" ||
       expr.items.front().text == "oneof" || expr.items.front().text == "or" || expr.items.front().text == "and"))
    fail(expr, fmt::format("unsupported nested effect '{}'", expr.items.front().text));
  out.adds.insert(parse_atom_expr(expr, scope));
}

EffectList parse_deterministic_effect(const SExpr& expr, const Scope& scope) {
  expect_list(expr, "an effect");
  EffectList out;
  if (!expr.items.empty() && expr.items.front().is_symbol("and")) {
    for (std::size_t i = 1; i < expr.items.size(); ++i) parse_literal(expr.items[i], scope, out);
  } else {
    parse_literal(expr, scope, out);
  }
  for (const auto& atom : out.adds)
    if (out.deletes.contains(atom)) fail(expr, fmt::format("{} is both added and deleted", to_string(atom)));
  return out;
}

/// `or` in effect position is accepted as an alias of oneof.
std::vector<EffectList> parse_effect(const SExpr& expr, const Scope& scope) {
  expect_list(expr, "an effect");
  if (!expr.items.empty() && (expr.items.front().is_symbol("oneof") || expr.items.front().is_symbol("or"))) {
    if (expr.items.size() < 2) fail(expr, "oneof needs at least one alternative");
    std::vector<EffectList> alternatives;
    for (std::size_t i = 1; i < expr.items.size(); ++i)
      alternatives.push_back(parse_deterministic_effect(expr.items[i], scope));
    return alternatives;
  }
  return {parse_deterministic_effect(expr, scope)};
}

LiftedAction parse_action(const SExpr& expr, const DomainModel& domain) {
  LiftedAction action;
  if (expr.items.size() < 2) fail(expr, "action without a name");
  action.name = expect_symbol(expr.items[1], "an action name");

  const SExpr* precondition = nullptr;
  const SExpr* effect = nullptr;
  bool seen_parameters = false;
  bool seen_agent = false;
  for (std::size_t i = 2; i < expr.items.size(); i += 2) {
    const auto& key = expect_symbol(expr.items[i], "an action field");
    if (i + 1 >= expr.items.size()) fail(expr.items[i], fmt::format("missing value for {}", key));
    const auto& value = expr.items[i + 1];
    if (key == ":parameters") {
      if (seen_parameters) fail(expr.items[i], "duplicate :parameters");
      seen_parameters = true;
      action.parameters = parse_typed_list(expect_list(value, "a parameter list").items, 0, true);
    } else if (key == ":agent") {
      if (seen_agent) fail(expr.items[i], "duplicate :agent");
      seen_agent = true;
      auto agent = parse_agent(expect_symbol(value, "human, robot or both"));
      if (!agent) fail(value, fmt::format("unknown agent '{}'", value.text));
      action.agent = *agent;
    } else if (key == ":precondition") {
      if (precondition) fail(expr.items[i], "duplicate :precondition");
      precondition = &value;
    } else if (key == ":effect") {
      if (effect) fail(expr.items[i], "duplicate :effect");
      effect = &value;
    } else {
      fail(expr.items[i], fmt::format("unknown action field '{}'", key));
    }
  }

  Scope scope{&domain, &action.parameters, true};
  if (precondition) action.precondition = parse_formula(*precondition, scope);
  if (!effect) fail(expr, fmt::format("action '{}' has no :effect", action.name));
  action.effects = parse_effect(*effect, scope);
  return action;
}

/// (define (KIND NAME) sections...)
const SExpr& open_define(const std::vector<SExpr>& top, std::string_view kind, std::string& name) {
  if (top.empty()) throw ParseError(fmt::format("empty {} text", kind), SourcePosition{});
  if (top.size() > 1) fail(top[1], "trailing expression after define");
  const auto& define = expect_list(top.front(), "(define ...)");
  if (define.items.size() < 2 || !define.items[0].is_symbol("define")) fail(define, "expected (define ...)");
  const auto& header = expect_list(define.items[1], fmt::format("({} NAME)", kind));
  if (header.items.size() != 2 || !header.items[0].is_symbol(kind))
    fail(header, fmt::format("expected ({} NAME)", kind));
  name = expect_symbol(header.items[1], "a name");
  return define;
}

std::string render_effect_list(const EffectList& effect) {
  std::vector<std::string> literals;
  for (const auto& atom : effect.adds) literals.push_back(to_string(atom));
  for (const auto& atom : effect.deletes) literals.push_back("(not " + to_string(atom) + ")");
  if (literals.size() == 1) return literals.front();
  std::string out = "(and";
  for (const auto& literal : literals) out += " " + literal;
  return out + ")";
}

std::string render_effect(const std::vector<EffectList>& effects) {
  if (effects.size() == 1) return render_effect_list(effects.front());
  std::string out = "(oneof";
  for (const auto& effect : effects) out += "\n              " + render_effect_list(effect);
  return out + ")";
}

void collect_goal_atoms(const Formula& formula, AtomSet& out) {
  switch (formula.kind()) {
    case Formula::Kind::atom:
      out.insert(formula.atom());
      return;
    case Formula::Kind::conjunction:
      for (const auto& operand : formula.operands()) collect_goal_atoms(operand, out);
      return;
    default:
      throw Error("goal is not a conjunction of atoms: " + to_string(formula));
  }
}

}  // namespace

const PredicateSignature* DomainModel::predicate(std::string_view name) const {
  auto it = std::find_if(predicates.begin(), predicates.end(), [&](const auto& p) { return p.name == name; });
  return it == predicates.end() ? nullptr : &*it;
}

const LiftedAction* DomainModel::action(std::string_view name) const {
  auto it = std::find_if(actions.begin(), actions.end(), [&](const auto& a) { return a.name == name; });
  return it == actions.end() ? nullptr : &*it;
}

Goal ProblemModel::goal_as(std::string goal_name) const {
  AtomSet atoms;
  collect_goal_atoms(goal, atoms);
  return Goal(std::move(goal_name), std::move(atoms));
}

DomainModel parse_domain(std::string_view text) {
  DomainModel domain;
  const auto top = read_sexprs(text);
  const auto& define = open_define(top, "domain", domain.name);

  std::vector<const SExpr*> action_exprs;
  for (std::size_t i = 2; i < define.items.size(); ++i) {
    const auto& section = expect_list(define.items[i], "a domain section");
    if (section.items.empty()) fail(section, "empty section");
    const auto& key = expect_symbol(section.items.front(), "a section keyword");
    if (key == ":requirements") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        const auto& requirement = expect_symbol(section.items[j], "a requirement");
        if (!kRequirements.contains(requirement))
          fail(section.items[j], fmt::format("unsupported requirement '{}'", requirement));
        domain.requirements.push_back(requirement);
      }
    } else if (key == ":types") {
      for (std::size_t j = 1; j < section.items.size(); ++j)
        if (!section.items[j].is_symbol("object"))
          fail(section.items[j], "type hierarchies are not supported; only object is allowed");
    } else if (key == ":predicates") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        const auto& declaration = expect_list(section.items[j], "a predicate declaration");
        if (declaration.items.empty()) fail(declaration, "empty predicate declaration");
        PredicateSignature signature;
        signature.name = expect_symbol(declaration.items.front(), "a predicate name");
        if (domain.predicate(signature.name))
          fail(declaration, fmt::format("predicate '{}' declared twice", signature.name));
        signature.arity = parse_typed_list(declaration.items, 1, true).size();
        domain.predicates.push_back(std::move(signature));
      }
    } else if (key == ":action") {
      action_exprs.push_back(&section);
    } else {
      fail(section.items.front(), fmt::format("unsupported section '{}'", key));
    }
  }

  for (const auto* expr : action_exprs) {
    auto action = parse_action(*expr, domain);
    if (domain.action(action.name)) fail(*expr, fmt::format("action '{}' declared twice", action.name));
    domain.actions.push_back(std::move(action));
  }
  return domain;
}

ProblemModel parse_problem(std::string_view text, const DomainModel& domain) {
  ProblemModel problem;
  const auto top = read_sexprs(text);
  const auto& define = open_define(top, "problem", problem.name);

  const SExpr* init = nullptr;
  const SExpr* goal = nullptr;
  for (std::size_t i = 2; i < define.items.size(); ++i) {
    const auto& section = expect_list(define.items[i], "a problem section");
    if (section.items.empty()) fail(section, "empty section");
    const auto& key = expect_symbol(section.items.front(), "a section keyword");
    if (key == ":domain") {
      if (section.items.size() != 2) fail(section, "expected (:domain NAME)");
      problem.domain_name = expect_symbol(section.items[1], "a domain name");
      if (problem.domain_name != domain.name)
        fail(section.items[1],
             fmt::format("problem is for domain '{}', not '{}'", problem.domain_name, domain.name));
    } else if (key == ":requirements") {
      for (std::size_t j = 1; j < section.items.size(); ++j)
        if (!kRequirements.contains(expect_symbol(section.items[j], "a requirement")))
          fail(section.items[j], fmt::format("unsupported requirement '{}'", section.items[j].text));
    } else if (key == ":objects") {
      problem.objects = parse_typed_list(section.items, 1, false);
    } else if (key == ":init") {
      init = &section;
    } else if (key == ":goal") {
      if (section.items.size() != 2) fail(section, "expected (:goal FORMULA)");
      goal = &section.items[1];
    } else {
      fail(section.items.front(), fmt::format("unsupported section '{}'", key));
    }
  }
  if (problem.domain_name.empty()) fail(define, "problem has no (:domain NAME)");

  Scope scope{&domain, &problem.objects, false};
  if (init)
    for (std::size_t j = 1; j < init->items.size(); ++j) problem.init.insert(parse_atom_expr(init->items[j], scope));
  if (goal) problem.goal = parse_formula(*goal, scope);
  return problem;
}

std::string render(const DomainModel& domain) {
  std::vector<std::string> sections;
  if (!domain.requirements.empty()) {
    std::string line = "  (:requirements";
    for (const auto& requirement : domain.requirements) line += " " + requirement;
    sections.push_back(line + ")");
  }
  if (!domain.predicates.empty()) {
    std::string block = "  (:predicates";
    for (const auto& predicate : domain.predicates) {
      block += "\n    (" + predicate.name;
      for (std::size_t i = 0; i < predicate.arity; ++i) block += fmt::format(" ?x{}", i + 1);
      block += ")";
    }
    sections.push_back(block + ")");
  }
  for (const auto& action : domain.actions) {
    std::string block = "  (:action " + action.name;
    if (!action.parameters.empty()) {
      block += "\n    :parameters (";
      for (std::size_t i = 0; i < action.parameters.size(); ++i) block += (i ? " " : "") + action.parameters[i];
      block += ")";
    }
    block += fmt::format("\n    :agent {}", to_string(action.agent));
    block += "\n    :precondition " + to_string(action.precondition);
    block += "\n    :effect " + render_effect(action.effects);
    sections.push_back(block + ")");
  }

  std::string out = "(define (domain " + domain.name + ")";
  for (const auto& section : sections) out += "\n\n" + section;
  return out + ")\n";
}

std::string render(const ProblemModel& problem) {
  std::string out = "(define (problem " + problem.name + ")\n";
  out += "  (:domain " + problem.domain_name + ")\n";
  out += "  (:objects";
  for (const auto& object : problem.objects) out += " " + object;
  out += ")\n  (:init";
  for (const auto& atom : problem.init) out += " " + to_string(atom);
  out += ")\n  (:goal " + to_string(problem.goal) + "))\n";
  return out;
}

std::vector<GroundAction> ground(const DomainModel& domain, const std::vector<std::string>& objects) {
  std::vector<const LiftedAction*> order;
  for (const auto& action : domain.actions) order.push_back(&action);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->name < b->name; });

  std::vector<GroundAction> out;
  for (const auto* lifted : order) {
    const auto arity = lifted->parameters.size();
    if (arity > 0 && objects.empty()) continue;
    std::vector<std::size_t> digits(arity, 0);
    for (;;) {
      std::map<std::string, std::string> binding;
      GroundAction action;
      action.name = lifted->name;
      action.agent = lifted->agent;
      for (std::size_t i = 0; i < arity; ++i) {
        binding[lifted->parameters[i]] = objects[digits[i]];
        action.args.push_back(objects[digits[i]]);
      }
      action.precondition = instantiate(lifted->precondition, binding);
      for (const auto& effect : lifted->effects) {
        EffectList bound;
        for (const auto& atom : effect.adds) bound.adds.insert(instantiate(atom, binding));
        for (const auto& atom : effect.deletes) bound.deletes.insert(instantiate(atom, binding));
        action.effects.push_back(std::move(bound));
      }
      out.push_back(std::move(action));

      std::size_t position = arity;
      bool carry = true;
      while (carry && position > 0) {
        --position;
        carry = ++digits[position] == objects.size();
        if (carry) digits[position] = 0;
      }
      if (carry) break;
    }
  }
  return out;
}

std::string check_atom(const Atom& atom, const DomainModel& domain, const std::vector<std::string>& objects) {
  const auto* signature = domain.predicate(atom.name);
  if (!signature) return fmt::format("undeclared predicate '{}'", atom.name);
  if (signature->arity != atom.args.size())
    return fmt::format("predicate '{}' takes {} argument(s), got {}", atom.name, signature->arity, atom.args.size());
  for (const auto& arg : atom.args)
    if (std::find(objects.begin(), objects.end(), arg) == objects.end())
      return fmt::format("undeclared object '{}'", arg);
  return {};
}

}  // namespace proactive::pddl
