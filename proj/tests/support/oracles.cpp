#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace proactive::testing {

namespace {

double random_degree(std::mt19937& rng) {
  // Half the values on a coarse grid so that ties and exact extremes occur.
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0)
    return std::uniform_int_distribution<int>(0, 10)(rng) / 10.0;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

DynamicSystem RandomWorld::system() const {
  std::vector<WorldState> states;
  for (std::size_t i = 0; i < successors.size(); ++i)
    states.push_back(WorldState{"r" + std::to_string(i), {make_atom("s", {std::to_string(i)})}});
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < successors.size(); ++i)
    for (int j : successors[i])
      transitions.push_back(Transition{i, InputLabel::null(), static_cast<StateIndex>(j)});
  return DynamicSystem(std::move(states), std::move(transitions));
}

DesirabilityMap RandomWorld::desirability() const {
  std::map<std::string, double, std::less<>> entries;
  for (std::size_t i = 0; i < des.size(); ++i) entries.emplace("r" + std::to_string(i), des[i]);
  return DesirabilityMap(std::move(entries), fallback);
}

std::vector<SchemeTable> RandomWorld::tables() const {
  std::vector<SchemeTable> out;
  for (std::size_t a = 0; a < schemes.size(); ++a) {
    std::vector<SchemeTable::Entry> entries;
    for (const auto& entry : schemes[a]) {
      if (!entry) {
        entries.emplace_back();
        continue;
      }
      std::vector<SchemeTable::Outcome> outcomes;
      for (int t : *entry)
        outcomes.push_back(t < 0 ? SchemeTable::Outcome{} : SchemeTable::Outcome{static_cast<StateIndex>(t)});
      entries.emplace_back(std::move(outcomes));
    }
    out.emplace_back("a" + std::to_string(a), std::move(entries));
  }
  return out;
}

RandomWorld random_world(std::mt19937& rng, int max_states, int max_schemes) {
  RandomWorld world;
  const int n = std::uniform_int_distribution<int>(1, max_states)(rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> fanout(0, 3);
  world.successors.resize(n);
  for (int i = 0; i < n; ++i) {
    int count = fanout(rng);
    for (int j = 0; j < count; ++j) {
      int t = pick(rng);
      if (std::find(world.successors[i].begin(), world.successors[i].end(), t) == world.successors[i].end())
        world.successors[i].push_back(t);
    }
    world.des.push_back(random_degree(rng));
  }
  world.fallback = random_degree(rng);

  const int m = std::uniform_int_distribution<int>(0, max_schemes)(rng);
  std::bernoulli_distribution applicable(0.6);
  std::bernoulli_distribution unlisted(0.1);
  std::uniform_int_distribution<int> outcome_count(1, 3);
  for (int a = 0; a < m; ++a) {
    std::vector<std::optional<std::vector<int>>> entries;
    for (int s = 0; s < n; ++s) {
      if (!applicable(rng)) {
        entries.emplace_back();
        continue;
      }
      std::vector<int> outcomes;
      int count = outcome_count(rng);
      for (int o = 0; o < count; ++o) outcomes.push_back(unlisted(rng) ? -1 : pick(rng));
      entries.emplace_back(std::move(outcomes));
    }
    world.schemes.push_back(std::move(entries));
  }
  return world;
}

std::set<int> BruteForceEqm::free_run(int state, int k) const {
  if (k == 0) return {state};
  std::set<int> out;
  const auto& next = world_.successors[state];
  if (next.empty()) return free_run(state, k - 1);
  for (int s : next) {
    auto part = free_run(s, k - 1);
    out.insert(part.begin(), part.end());
  }
  return out;
}

double BruteForceEqm::benefit(int scheme, int state, int k) const {
  const auto& entry = world_.schemes[scheme][state];
  if (!entry) return 0.0;
  std::vector<double> values;
  for (int t : *entry) {
    if (t < 0) {
      values.push_back(world_.fallback);
      continue;
    }
    std::vector<double> future;
    for (int s : free_run(t, k)) future.push_back(des(s));
    values.push_back(*std::min_element(future.begin(), future.end()));
  }
  return *std::min_element(values.begin(), values.end());
}

double BruteForceEqm::opportunity(int type, int scheme, int state, int k) const {
  const auto future = ordered(free_run(state, k));
  auto over_future = [&](auto f, bool take_max) {
    std::vector<double> values;
    for (int s : future) values.push_back(f(s));
    return take_max ? *std::max_element(values.begin(), values.end()) : *std::min_element(values.begin(), values.end());
  };
  switch (type) {
    case 0:
      return std::min(1 - des(state), benefit(scheme, state, 0));
    case 1:
      return std::min(1 - des(state), over_future([&](int s) { return benefit(scheme, s, 0); }, true));
    case 2:
      return std::min(1 - des(state), over_future([&](int s) { return benefit(scheme, s, 0); }, false));
    case 3:
      return over_future([&](int s) { return std::min(1 - des(s), benefit(scheme, s, 0)); }, true);
    case 4:
      return over_future([&](int s) { return std::min(1 - des(s), benefit(scheme, s, 0)); }, false);
    case 5:
      return std::min(over_future([&](int s) { return 1 - des(s); }, true), benefit(scheme, state, k));
    default:
      return std::min(over_future([&](int s) { return 1 - des(s); }, false), benefit(scheme, state, k));
  }
}

double BruteForceEqm::equilibrium(int state, int horizon, int scheme_count) const {
  double best = 0.0;
  for (int a = 0; a < scheme_count; ++a)
    for (int k = 0; k <= horizon; ++k)
      for (int type = 0; type < 7; ++type) best = std::max(best, opportunity(type, a, state, k));
  return 1 - best;
}

namespace {

Atom p(int i) { return make_atom("p" + std::to_string(i)); }

using Mask = std::uint32_t;

struct MaskAction {
  std::vector<std::pair<int, bool>> pre;
  std::vector<std::pair<Mask, Mask>> alternatives;
  AgentKind agent;
};

/// Atom index from "(pN)".
int index_of(const Atom& atom) { return std::stoi(atom.name.substr(1)); }

std::vector<MaskAction> encode(const RandomStrips& instance) {
  std::vector<MaskAction> out;
  for (const auto& action : instance.actions) {
    MaskAction m;
    m.agent = action.agent;
    for (const auto& literal : action.precondition.operands()) {
      if (literal.kind() == Formula::Kind::atom)
        m.pre.emplace_back(index_of(literal.atom()), true);
      else
        m.pre.emplace_back(index_of(literal.operands().front().atom()), false);
    }
    for (const auto& effect : action.effects) {
      Mask adds = 0;
      Mask dels = 0;
      for (const auto& atom : effect.adds) adds |= Mask{1} << index_of(atom);
      for (const auto& atom : effect.deletes) dels |= Mask{1} << index_of(atom);
      m.alternatives.emplace_back(adds, dels);
    }
    out.push_back(std::move(m));
  }
  return out;
}

Mask encode_atoms(const AtomSet& atoms) {
  Mask out = 0;
  for (const auto& atom : atoms) out |= Mask{1} << index_of(atom);
  return out;
}

std::map<Mask, std::vector<Mask>> explore(const RandomStrips& instance, const AgentSet& actors) {
  auto actions = encode(instance);
  actions.erase(std::remove_if(actions.begin(), actions.end(), [&](const auto& a) { return !actors.contains(a.agent); }),
                actions.end());
  Mask relevant = encode_atoms(instance.goal.atoms());
  for (const auto& action : actions)
    for (auto [i, positive] : action.pre) relevant |= Mask{1} << i;

  std::map<Mask, std::vector<Mask>> graph;
  std::deque<Mask> frontier{encode_atoms(instance.start)};
  graph[frontier.front()];
  while (!frontier.empty()) {
    Mask s = frontier.front();
    frontier.pop_front();
    std::vector<Mask> next;
    for (const auto& action : actions) {
      bool ok = std::all_of(action.pre.begin(), action.pre.end(),
                            [&](auto lit) { return (((s >> lit.first) & 1U) != 0) == lit.second; });
      if (!ok) continue;
      std::set<Mask> projections;
      for (auto [adds, dels] : action.alternatives) projections.insert(((s & ~dels) | adds) & relevant);
      if (projections.size() != 1) continue;
      auto [adds, dels] = action.alternatives.front();
      next.push_back((s & ~dels) | adds);
    }
    for (Mask t : next)
      if (graph.emplace(t, std::vector<Mask>{}).second) frontier.push_back(t);
    graph[s] = std::move(next);
  }
  return graph;
}

}  // namespace

RandomStrips random_strips(std::mt19937& rng, int atom_count, int action_count) {
  RandomStrips instance;
  std::uniform_int_distribution<int> atom(0, atom_count - 1);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> small(0, 2);
  std::uniform_int_distribution<int> agent(0, 5);

  for (int i = 0; i < atom_count; ++i)
    if (std::bernoulli_distribution(0.3)(rng)) instance.start.insert(p(i));

  for (int a = 0; a < action_count; ++a) {
    GroundAction action;
    action.name = "act" + std::to_string(std::uniform_int_distribution<int>(0, action_count / 2)(rng));
    action.args = {"o" + std::to_string(a)};
    int roll = agent(rng);
    action.agent = roll < 3 ? AgentKind::both : (roll < 5 ? AgentKind::human : AgentKind::robot);

    std::vector<Formula> literals;
    std::set<int> used;
    int pre_count = small(rng) + 1;
    for (int i = 0; i < pre_count; ++i) {
      int x = atom(rng);
      if (!used.insert(x).second) continue;
      literals.push_back(coin(rng) ? Formula::of(p(x)) : Formula::negation(Formula::of(p(x))));
    }
    action.precondition = Formula::all_of(std::move(literals));

    int alternatives = std::bernoulli_distribution(0.15)(rng) ? 2 : 1;
    for (int e = 0; e < alternatives; ++e) {
      EffectList effect;
      int count = small(rng) + 1;
      for (int i = 0; i < count; ++i) {
        auto x = p(atom(rng));
        if (coin(rng)) {
          if (!effect.deletes.contains(x)) effect.adds.insert(x);
        } else if (!effect.adds.contains(x)) {
          effect.deletes.insert(x);
        }
      }
      action.effects.push_back(std::move(effect));
    }
    instance.actions.push_back(std::move(action));
  }

  AtomSet goal;
  int goal_count = small(rng) + 1;
  for (int i = 0; i < goal_count; ++i) goal.insert(p(atom(rng)));
  instance.goal = Goal("g", std::move(goal));
  return instance;
}

std::optional<std::size_t> exhaustive_distance(const RandomStrips& instance, int, const AgentSet& actors) {
  auto graph = explore(instance, actors);
  Mask goal = encode_atoms(instance.goal.atoms());
  // Backward relaxation to a fixpoint over the explicit graph.
  constexpr std::size_t infinity = static_cast<std::size_t>(-1);
  std::map<Mask, std::size_t> distance;
  for (const auto& [s, next] : graph) distance[s] = (s & goal) == goal ? 0 : infinity;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, next] : graph)
      for (Mask t : next)
        if (distance[t] != infinity && distance[t] + 1 < distance[s]) {
          distance[s] = distance[t] + 1;
          changed = true;
        }
  }
  auto d = distance[encode_atoms(instance.start)];
  if (d == infinity) return std::nullopt;
  return d;
}

std::size_t reachable_count(const RandomStrips& instance, int, const AgentSet& actors) {
  return explore(instance, actors).size();
}

bool plan_reaches_goal(const RandomStrips& instance, const std::vector<GroundAction>& plan) {
  AtomSet state = instance.start;
  for (const auto& action : plan) {
    if (!applicable(state, action)) return false;
    state = proactive::apply(state, action).front();
  }
  return instance.goal.satisfied_by(state);
}

}  // namespace proactive::testing
