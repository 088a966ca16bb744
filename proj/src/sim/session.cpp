#include "proactive/sim/session.hpp"

#include <algorithm>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "proactive/error.hpp"

namespace proactive {

namespace {

std::vector<std::string> sorted_strings(const AtomSet& atoms) {
  auto out = to_strings(atoms);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_free_successor(const DynamicSystem& system, StateIndex from, StateIndex to) {
  const auto& successors = system.free_successors(from);
  return std::find(successors.begin(), successors.end(), to) != successors.end();
}

}  // namespace

Session::Session(std::shared_ptr<const Knowledge> knowledge, RunMode mode, std::uint32_t seed)
    : knowledge_(std::move(knowledge)), mode_(mode), seed_(seed), engine_(seed) {}

void Session::reset(std::uint32_t seed) {
  seed_ = seed;
  engine_.seed(seed);
  started_ = false;
  anchor_.clear();
  label_.clear();
  atoms_.clear();
  adds_.clear();
  deletes_.clear();
  trace_.clear();
}

std::optional<std::string> Session::graph_id(const AtomSet& atoms) const {
  if (auto index = knowledge_->system.find(atoms)) return knowledge_->system.state(*index).id;
  return std::nullopt;
}

void Session::record_delta(const AtomSet& before, const AtomSet& after) {
  for (const auto& atom : after)
    if (!before.contains(atom)) {
      adds_.insert(atom);
      deletes_.erase(atom);
    }
  for (const auto& atom : before)
    if (!after.contains(atom)) {
      deletes_.insert(atom);
      adds_.erase(atom);
    }
}

const TraceEvent& Session::start(const std::string& state) {
  const auto& system = knowledge_->system;
  const auto& initial = system.state(system.index_of(state));
  reset(seed_);
  started_ = true;
  anchor_ = initial.id;
  label_ = initial.id;
  atoms_ = initial.atoms;

  TraceEvent event;
  event.pick = Pick::none();
  event.changed = true;
  return decide(std::move(event), initial.id);
}

const TraceEvent& Session::step(const Pick& pick) {
  if (!started_) throw Error("session not started");
  const auto& system = knowledge_->system;
  TraceEvent event;
  event.pick = pick;

  switch (pick.kind) {
    case Pick::Kind::none:
      throw IllegalPick("a step needs a transition or an action");
    case Pick::Kind::transition: {
      auto target = system.find_id(pick.target);
      if (!target) throw IllegalPick(fmt::format("unknown state '{}'", pick.target));
      if (!is_free_successor(system, system.index_of(anchor_), *target))
        throw IllegalPick(fmt::format("no free-run transition {} -> {}", anchor_, pick.target));
      const auto& target_atoms = system.state(*target).atoms;

      AtomSet next;
      auto listed = system.find(atoms_);
      if (listed && is_free_successor(system, *listed, *target)) {
        next = target_atoms;
        adds_.clear();
        deletes_.clear();
      } else {
        for (const auto& atom : target_atoms)
          if (!deletes_.contains(atom)) next.insert(atom);
        next.insert(adds_.begin(), adds_.end());
      }
      event.changed = next != atoms_;
      atoms_ = std::move(next);
      anchor_ = pick.target;
      label_ = (!event.changed || atoms_ == target_atoms) ? pick.target : pick.target + "'";
      return decide(std::move(event), pick.target);
    }
    case Pick::Kind::action: {
      const auto* action = knowledge_->action(pick.target);
      if (!action || !human_capable(action->agent))
        throw IllegalPick(fmt::format("'{}' is not a human action", pick.target));
      if (!applicable(atoms_, *action))
        throw IllegalPick(fmt::format("'{}' is not applicable in {}", pick.target, label_));
      auto outcomes = proactive::apply(atoms_, *action);
      std::size_t index = 0;
      if (pick.outcome) {
        if (*pick.outcome >= outcomes.size())
          throw IllegalPick(fmt::format("'{}' has {} outcome(s), not {}", pick.target, outcomes.size(),
                                        *pick.outcome));
        index = *pick.outcome;
      } else if (outcomes.size() > 1) {
        index = engine_() % outcomes.size();
      }
      event.pick.outcome = index;
      auto& next = outcomes[index];
      event.changed = next != atoms_;
      if (auto id = graph_id(next)) {
        anchor_ = *id;
        label_ = *id;
        adds_.clear();
        deletes_.clear();
      } else if (event.changed) {
        record_delta(atoms_, next);
        label_ = anchor_ + "'";
      }
      atoms_ = std::move(next);
      return decide(std::move(event), anchor_);
    }
  }
  throw Error("unreachable pick kind");
}

const TraceEvent& Session::decide(TraceEvent event, const std::string& target) {
  event.step = trace_.size();
  event.mode = mode_;
  event.state = label_;
  event.atoms = sorted_strings(atoms_);
  event.graph_state = graph_id(atoms_);
  event.result_state = label_;
  event.seed = seed_;

  if (event.changed) {
    auto decision = evaluate(*knowledge_, WorldState{label_, atoms_}, mode_);
    if (decision.intention)
      event.intention = IntentionRecord{decision.intention->goal.name(), decision.intention->residual_plan.labels()};
    event.opportunities = decision.opportunities;
    event.chosen = decision.chosen;
    event.deferred = decision.deferred;
    if (decision.chosen && !decision.deferred) {
      const auto* action = knowledge_->action(decision.chosen->action);
      if (!action) throw Error(fmt::format("chosen action '{}' is not grounded", decision.chosen->action));
      auto outcomes = proactive::apply(atoms_, *action);
      std::size_t index = outcomes.size() > 1 ? engine_() % outcomes.size() : 0;
      record_delta(atoms_, outcomes[index]);
      atoms_ = std::move(outcomes[index]);
      event.dispatched = action->label();
      event.outcome = index;
      event.message = decision.message;
      const auto& target_atoms = knowledge_->system.state(knowledge_->system.index_of(target)).atoms;
      label_ = atoms_ == target_atoms ? target : target + "'";
      event.result_state = label_;
      spdlog::debug("step {}: dispatched {} in {}, now {}", event.step, action->label(), event.state, label_);
    } else if (decision.chosen) {
      spdlog::debug("step {}: deferred {} until {}", event.step, decision.chosen->action,
                    decision.chosen->acting_state);
    }
  }
  trace_.push_back(std::move(event));
  return trace_.back();
}

Decision Session::peek() const {
  if (!started_) return {};
  return evaluate(*knowledge_, WorldState{label_, atoms_}, mode_);
}

void check_trajectory(const Knowledge& knowledge, const std::vector<std::string>& trajectory) {
  const auto& system = knowledge.system;
  std::optional<StateIndex> previous;
  for (const auto& id : trajectory) {
    auto index = system.find_id(id);
    if (!index) throw TrajectoryError(fmt::format("trajectory names unknown state '{}'", id));
    if (previous && !is_free_successor(system, *previous, *index))
      throw TrajectoryError(
          fmt::format("trajectory is not a free-run path: no edge {} -> {}", system.state(*previous).id, id));
    previous = index;
  }
}

std::vector<TraceEvent> replay(std::shared_ptr<const Knowledge> knowledge, RunMode mode,
                               const std::vector<std::string>& trajectory, std::uint32_t seed) {
  check_trajectory(*knowledge, trajectory);
  if (trajectory.empty()) return {};
  Session session(std::move(knowledge), mode, seed);
  session.start(trajectory.front());
  for (std::size_t i = 1; i < trajectory.size(); ++i) session.step(Pick::to(trajectory[i]));
  return session.trace();
}

}  // namespace proactive
