#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "proactive/select/select.hpp"
#include "proactive/sim/trace.hpp"

namespace proactive {

/// One simulated run. The world follows the free-run graph; robot and human
/// actions move it off the graph, and those changes are carried along as a
/// delta (atoms added, atoms deleted) onto later free-run targets until the
/// run re-enters the graph through a listed state. Single-threaded.
class Session {
 public:
  Session(std::shared_ptr<const Knowledge> knowledge, RunMode mode, std::uint32_t seed);

  /// Places the world in a listed state and runs the first decision.
  /// Throws UnknownState.
  const TraceEvent& start(const std::string& state);

  /// Advances by one pick and runs the decision procedure if the state
  /// changed. Transition picks must follow a free-run edge of the graph state
  /// the run is anchored at; action picks must name an applicable
  /// human-capable action. Throws IllegalPick, or Error before start().
  const TraceEvent& step(const Pick& pick);

  /// Opportunities at the current state, ranked, without dispatching.
  Decision peek() const;

  void set_mode(RunMode mode) { mode_ = mode; }
  /// Clears the trace and restarts the random stream; start() must follow.
  void reset(std::uint32_t seed);

  bool started() const noexcept { return started_; }
  RunMode mode() const noexcept { return mode_; }
  std::uint32_t seed() const noexcept { return seed_; }
  std::size_t steps() const noexcept { return trace_.size(); }
  const std::string& label() const noexcept { return label_; }
  const std::string& anchor() const noexcept { return anchor_; }
  const AtomSet& atoms() const noexcept { return atoms_; }
  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
  const Knowledge& knowledge() const noexcept { return *knowledge_; }

 private:
  const TraceEvent& decide(TraceEvent event, const std::string& target);
  void record_delta(const AtomSet& before, const AtomSet& after);
  std::optional<std::string> graph_id(const AtomSet& atoms) const;

  std::shared_ptr<const Knowledge> knowledge_;
  RunMode mode_;
  std::uint32_t seed_;
  std::mt19937 engine_;
  bool started_ = false;
  std::string anchor_;
  std::string label_;
  AtomSet atoms_;
  AtomSet adds_;
  AtomSet deletes_;
  std::vector<TraceEvent> trace_;
};

/// Throws TrajectoryError when consecutive ids are not free-run edges.
void check_trajectory(const Knowledge& knowledge, const std::vector<std::string>& trajectory);

/// Runs a whole trajectory of graph state ids. An empty trajectory gives an
/// empty trace.
std::vector<TraceEvent> replay(std::shared_ptr<const Knowledge> knowledge, RunMode mode,
                               const std::vector<std::string>& trajectory, std::uint32_t seed);

}  // namespace proactive
