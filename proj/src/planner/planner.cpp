#include "proactive/planner/planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace proactive {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& bits) const noexcept {
    std::size_t seed = bits.size();
    for (auto word : bits) seed ^= std::hash<std::uint64_t>{}(word) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

class AtomIndex {
 public:
  std::size_t intern(const Atom& atom) {
    auto [it, inserted] = index_.emplace(atom, index_.size());
    return it->second;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::map<Atom, std::size_t> index_;
};

bool test(const Bits& bits, std::size_t i) { return (bits[i / 64] >> (i % 64)) & 1U; }
void set(Bits& bits, std::size_t i) { bits[i / 64] |= std::uint64_t{1} << (i % 64); }

struct CompiledFormula {
  Formula::Kind kind = Formula::Kind::conjunction;
  std::size_t atom = 0;
  std::vector<CompiledFormula> operands;

  bool eval(const Bits& bits) const {
    switch (kind) {
      case Formula::Kind::atom:
        return test(bits, atom);
      case Formula::Kind::negation:
        return !operands.front().eval(bits);
      case Formula::Kind::conjunction:
        return std::all_of(operands.begin(), operands.end(), [&](const auto& f) { return f.eval(bits); });
      case Formula::Kind::disjunction:
        return std::any_of(operands.begin(), operands.end(), [&](const auto& f) { return f.eval(bits); });
    }
    return false;
  }
};

CompiledFormula compile(const Formula& formula, AtomIndex& index) {
  CompiledFormula out;
  out.kind = formula.kind();
  if (formula.kind() == Formula::Kind::atom) out.atom = index.intern(formula.atom());
  for (const auto& operand : formula.operands()) out.operands.push_back(compile(operand, index));
  return out;
}

struct CompiledEffect {
  std::vector<std::size_t> adds;
  std::vector<std::size_t> deletes;
};

struct CompiledAction {
  const GroundAction* source = nullptr;
  CompiledFormula precondition;
  std::vector<CompiledEffect> effects;
};

Bits apply_bits(const Bits& state, const CompiledEffect& effect) {
  Bits next = state;
  for (auto i : effect.deletes) next[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  for (auto i : effect.adds) set(next, i);
  return next;
}

}  // namespace

std::vector<std::string> Plan::labels() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(step.label());
  return out;
}

std::optional<Plan> shortest_plan(const AtomSet& start, const Goal& goal, const std::vector<GroundAction>& actions,
                                  const AgentSet& actors) {
  std::vector<const GroundAction*> usable;
  for (const auto& action : actions)
    if (actors.contains(action.agent)) usable.push_back(&action);
  std::stable_sort(usable.begin(), usable.end(), [](const auto* a, const auto* b) { return a->name < b->name; });

  AtomIndex index;
  std::vector<std::size_t> goal_bits;
  for (const auto& atom : goal.atoms()) goal_bits.push_back(index.intern(atom));

  std::vector<CompiledAction> compiled;
  compiled.reserve(usable.size());
  for (const auto* action : usable) {
    CompiledAction c;
    c.source = action;
    c.precondition = compile(action->precondition, index);
    compiled.push_back(std::move(c));
  }
  const std::size_t relevant_count = index.size();
  for (auto& c : compiled) {
    for (const auto& effect : c.source->effects) {
      CompiledEffect e;
      for (const auto& atom : effect.adds) e.adds.push_back(index.intern(atom));
      for (const auto& atom : effect.deletes) e.deletes.push_back(index.intern(atom));
      c.effects.push_back(std::move(e));
    }
  }
  for (const auto& atom : start) index.intern(atom);

  const std::size_t words = (index.size() + 63) / 64;
  Bits origin(words == 0 ? 1 : words, 0);
  for (const auto& atom : start) set(origin, index.intern(atom));

  auto satisfied = [&](const Bits& bits) {
    return std::all_of(goal_bits.begin(), goal_bits.end(), [&](auto i) { return test(bits, i); });
  };
  // Relevant atoms were interned first, so they occupy indices [0, relevant_count).
  auto agree_on_relevant = [&](const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < relevant_count; ++i)
      if (test(a, i) != test(b, i)) return false;
    return true;
  };

  struct Node {
    std::size_t parent;
    std::size_t action;
  };
  std::vector<Bits> states{origin};
  std::vector<Node> nodes{{0, 0}};
  std::unordered_map<Bits, std::size_t, BitsHash> seen{{origin, 0}};

  auto extract = [&](std::size_t node) {
    Plan plan;
    while (node != 0) {
      plan.steps.push_back(*compiled[nodes[node].action].source);
      node = nodes[node].parent;
    }
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
  };

  if (satisfied(origin)) return Plan{};
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const auto current = frontier.front();
    frontier.pop_front();
    for (std::size_t a = 0; a < compiled.size(); ++a) {
      const auto& action = compiled[a];
      if (!action.precondition.eval(states[current])) continue;
      Bits next = apply_bits(states[current], action.effects.front());
      bool consistent = true;
      for (std::size_t e = 1; e < action.effects.size() && consistent; ++e)
        consistent = agree_on_relevant(next, apply_bits(states[current], action.effects[e]));
      if (!consistent) continue;
      auto [it, inserted] = seen.emplace(next, states.size());
      if (!inserted) continue;
      states.push_back(std::move(next));
      nodes.push_back({current, a});
      if (satisfied(states.back())) return extract(states.size() - 1);
      frontier.push_back(states.size() - 1);
    }
  }
  return std::nullopt;
}

}  // namespace proactive
