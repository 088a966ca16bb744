#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "proactive/pddl/scenario.hpp"
#include "proactive/select/select.hpp"
#include "proactive/sim/trace.hpp"

namespace proactive::cli {

enum ExitCode : int { ok = 0, internal_error = 1, input_error = 2 };

struct RunOptions {
  std::filesystem::path scenario;
  RunMode mode = RunMode::combined;
  /// Defaults to the scenario's trajectory.
  std::optional<std::vector<std::string>> trajectory;
  std::optional<std::uint32_t> seed;
  bool json = false;
};

struct OppsOptions {
  std::filesystem::path scenario;
  std::string state;
  std::optional<int> horizon;
};

struct GraphOptions {
  std::filesystem::path scenario;
  std::filesystem::path out;
};

struct PlansOptions {
  std::filesystem::path scenario;
  std::string state;
};

struct ReplOptions {
  std::filesystem::path scenario;
  RunMode mode = RunMode::combined;
  std::optional<std::uint32_t> seed;
};

struct ServeOptions {
  std::filesystem::path scenario;
  RunMode mode = RunMode::combined;
  std::optional<std::uint32_t> seed;
  std::string host = "127.0.0.1";
  int port = 8080;
};

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_opps(const OppsOptions& options, std::ostream& out, std::ostream& err);
int cmd_graph(const GraphOptions& options, std::ostream& out, std::ostream& err);
int cmd_plans(const PlansOptions& options, std::ostream& out, std::ostream& err);
int cmd_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

/// Columns: step state intention activity source degree. "?" marks an
/// unrecognized intention, "---" a step without activity.
std::string render_run_table(const std::vector<TraceEvent>& events);

/// One node per state labelled "id\ndes=v" and filled on a green (des 1) to
/// red (des 0) ramp; free-run edges solid, input-labelled edges dashed.
std::string render_dot(const pddl::ScenarioFile& scenario, const Knowledge& knowledge);

/// "a,b,c" -> {a, b, c}; the empty string is the empty list.
std::vector<std::string> split_csv(const std::string& text);

/// Full command line: parses arguments, applies PROACTIVE_LOG and dispatches.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace proactive::cli
