#include "proactive/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "proactive/bridge/bridge.hpp"
#include "proactive/error.hpp"
#include "proactive/sim/session.hpp"

namespace proactive::cli {

namespace {

/// Our own errors describe bad input; anything else is a defect.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string degree_text(double value) { return fmt::format("{:.3f}", value); }

std::string hsv_fill(double des) { return fmt::format("{:.3f} 0.550 0.950", des / 3.0); }

std::string dot_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string event_line(const TraceEvent& e) {
  std::string line = fmt::format("[{}] {}", e.step, e.state);
  if (!e.changed) return line + "  (unchanged)";
  if (e.intention) line += fmt::format("  intention={}", e.intention->goal);
  if (e.chosen) {
    line += fmt::format("  chosen={} [{} type {} k {} degree {}]", e.chosen->action, to_string(e.chosen->source),
                        e.chosen->type, e.chosen->lookahead, degree_text(e.chosen->degree));
    if (e.deferred) line += fmt::format("  deferred until {}", e.chosen->acting_state);
  }
  if (e.dispatched) line += fmt::format("  -> {}", e.result_state);
  if (e.message) line += fmt::format("  \"{}\"", *e.message);
  return line;
}

}  // namespace

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto begin = item.find_first_not_of(" \t");
    auto end = item.find_last_not_of(" \t");
    out.push_back(begin == std::string::npos ? std::string{} : item.substr(begin, end - begin + 1));
  }
  return out;
}

std::string render_run_table(const std::vector<TraceEvent>& events) {
  if (events.empty()) return {};
  std::vector<std::vector<std::string>> rows{{"step", "state", "intention", "activity", "source", "degree"}};
  for (const auto& e : events) {
    std::string intention = e.mode == RunMode::eqm ? "-" : (e.intention ? e.intention->goal : "?");
    std::string activity = "---";
    std::string source = "-";
    std::string degree = "-";
    if (e.chosen) {
      activity = e.dispatched ? *e.dispatched : fmt::format("defer {} to {}", e.chosen->action, e.chosen->acting_state);
      source = std::string(to_string(e.chosen->source));
      degree = degree_text(e.chosen->degree);
    }
    rows.push_back({std::to_string(e.step), e.state, intention, activity, source, degree});
  }
  return table(rows);
}

std::string render_dot(const pddl::ScenarioFile& scenario, const Knowledge& knowledge) {
  const auto& system = knowledge.system;
  std::string out = fmt::format("digraph {} {{\n", dot_quote(scenario.name));
  out += "  rankdir=LR;\n  node [shape=box, style=\"rounded,filled\", fontname=\"Helvetica\"];\n";
  for (const auto& state : system.states()) {
    double des = knowledge.des.degree(state.id);
    auto id = dot_quote(state.id);
    auto label = id.substr(0, id.size() - 1) + fmt::format("\\ndes={}\"", des);
    out += fmt::format("  {} [label={}, fillcolor={}];\n", id, label, dot_quote(hsv_fill(des)));
  }
  for (const auto& t : system.transitions()) {
    const auto& from = system.state(t.from).id;
    const auto& to = system.state(t.to).id;
    if (t.label.is_null())
      out += fmt::format("  {} -> {} [style=solid];\n", dot_quote(from), dot_quote(to));
    else
      out += fmt::format("  {} -> {} [style=dashed, label={}];\n", dot_quote(from), dot_quote(to),
                         dot_quote(to_string(t.label)));
  }
  for (StateIndex i = 0; i < system.size(); ++i)
    if (system.completed_sink(i))
      out += fmt::format("  {0} -> {0} [style=solid];\n", dot_quote(system.state(i).id));
  return out + "}\n";
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scenario = pddl::load_scenario(options.scenario);
    auto knowledge = std::make_shared<const Knowledge>(compile(scenario));
    auto trajectory = options.trajectory.value_or(scenario.trajectory);
    auto events = replay(knowledge, options.mode, trajectory, options.seed.value_or(scenario.engine.seed));
    if (options.json)
      write_jsonl(out, events);
    else
      out << render_run_table(events);
    return static_cast<int>(ok);
  });
}

int cmd_opps(const OppsOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scenario = pddl::load_scenario(options.scenario);
    auto knowledge = compile(scenario);
    int horizon = options.horizon.value_or(knowledge.horizon);
    if (horizon < 0) throw Error("K must be >= 0");
    auto state = knowledge.system.index_of(options.state);

    Predictor predictor(knowledge.system, knowledge.des);
    std::vector<SchemeTable> tables;
    for (const auto& scheme : knowledge.schemes) tables.push_back(SchemeTable::from(scheme, knowledge.system));
    auto report = equilibrium(predictor, state, horizon, tables);

    std::vector<std::vector<std::string>> rows{{"action", "type", "k", "degree", "benefit", "acting_state"}};
    for (const auto& o : report.opportunities)
      rows.push_back({o.action, std::to_string(o.type), std::to_string(o.lookahead), degree_text(o.degree),
                      degree_text(o.benefit), o.acting_state});
    out << table(rows);
    out << fmt::format("Eq({}, {}) = {}\n", options.state, horizon, degree_text(report.equilibrium));
    return static_cast<int>(ok);
  });
}

int cmd_graph(const GraphOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.out.empty()) {
      err << "usage: graph --scenario PATH --out PATH.dot\n";
      return static_cast<int>(input_error);
    }
    auto scenario = pddl::load_scenario(options.scenario);
    auto knowledge = compile(scenario);
    std::ofstream file(options.out, std::ios::binary);
    if (!file) throw Error(fmt::format("cannot write '{}'", options.out.string()));
    file << render_dot(scenario, knowledge);
    out << fmt::format("wrote {} ({} states)\n", options.out.string(), knowledge.system.size());
    return static_cast<int>(ok);
  });
}

int cmd_plans(const PlansOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scenario = pddl::load_scenario(options.scenario);
    auto knowledge = compile(scenario);
    const auto& state = knowledge.system.state(knowledge.system.index_of(options.state));
    std::vector<std::vector<std::string>> rows{{"goal", "length", "plan"}};
    for (const auto& residual : residual_plans(state.atoms, knowledge.goals, knowledge.actions)) {
      if (!residual.plan) {
        rows.push_back({residual.goal.name(), "-", "unreachable"});
        continue;
      }
      std::string steps;
      for (const auto& label : residual.plan->labels()) steps += (steps.empty() ? "" : " ") + label;
      rows.push_back({residual.goal.name(), std::to_string(residual.plan->length()), steps.empty() ? "(done)" : steps});
    }
    out << table(rows);
    auto intention = recognize(state.atoms, knowledge.goals, knowledge.actions);
    out << "intention: " << (intention ? intention->goal.name() : "?") << '\n';
    return static_cast<int>(ok);
  });
}

int cmd_repl(const ReplOptions& options, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scenario = pddl::load_scenario(options.scenario);
    auto knowledge = std::make_shared<const Knowledge>(compile(scenario));
    const std::string initial =
        scenario.trajectory.empty() ? knowledge->system.state(0).id : scenario.trajectory.front();
    Session session(knowledge, options.mode, options.seed.value_or(scenario.engine.seed));
    out << event_line(session.start(initial)) << '\n';

    const char* help =
        "commands: go STATE | do ACTION [OUTCOME] | next | opps | mode hir|eqm|combined | reset [SEED] | "
        "trace | help | quit\n";
    std::string line;
    while (out << "> " << std::flush, std::getline(in, line)) {
      std::istringstream words(line);
      std::string command;
      if (!(words >> command)) continue;
      try {
        if (command == "quit" || command == "exit") break;
        if (command == "help") {
          out << help;
        } else if (command == "go") {
          std::string target;
          words >> target;
          out << event_line(session.step(Pick::to(target))) << '\n';
        } else if (command == "do") {
          std::string action;
          words >> action;
          std::optional<std::size_t> outcome;
          if (std::size_t index; words >> index) outcome = index;
          out << event_line(session.step(Pick::act(action, outcome))) << '\n';
        } else if (command == "next") {
          const auto& system = knowledge->system;
          for (auto next : system.free_successors(system.index_of(session.anchor())))
            out << "  go " << system.state(next).id << '\n';
        } else if (command == "opps") {
          for (const auto& o : session.peek().opportunities)
            out << fmt::format("  {:<24} {} type {} k {} degree {} benefit {} at {}\n", o.action, to_string(o.source),
                               o.type, o.lookahead, degree_text(o.degree), degree_text(o.benefit), o.acting_state);
        } else if (command == "mode") {
          std::string mode;
          words >> mode;
          session.set_mode(parse_run_mode(mode));
        } else if (command == "reset") {
          std::uint32_t seed = session.seed();
          words >> seed;
          session.reset(seed);
          out << event_line(session.start(initial)) << '\n';
        } else if (command == "trace") {
          write_jsonl(out, session.trace());
        } else {
          out << "unknown command '" << command << "'\n" << help;
        }
      } catch (const Error& e) {
        out << "error: " << e.what() << '\n';
      }
    }
    return static_cast<int>(ok);
  });
}

int cmd_serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto scenario = pddl::load_scenario(options.scenario);
    Bridge bridge(scenario, options.mode, options.seed);
    int port = bridge.bind(options.host, options.port);
    out << fmt::format("serving {} on http://{}:{}\n", scenario.name, options.host, port) << std::flush;
    bridge.listen();
    return static_cast<int>(ok);
  });
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  if (const char* level = std::getenv("PROACTIVE_LOG")) {
    auto parsed = spdlog::level::from_str(level);
    spdlog::set_level(parsed);
  } else {
    spdlog::set_level(spdlog::level::warn);
  }

  CLI::App app{"Proactive agent engine: intention recognition and equilibrium maintenance"};
  app.require_subcommand(1);

  std::string mode_text = "combined";
  auto mode_check = CLI::IsMember({"hir", "eqm", "combined"});
  std::string scenario;
  std::optional<std::uint32_t> seed;

  RunOptions run;
  std::optional<std::string> trajectory;
  auto* run_cmd = app.add_subcommand("run", "Replay a trajectory and print the decisions");
  run_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  run_cmd->add_option("--mode", mode_text, "hir, eqm or combined")->check(mode_check);
  run_cmd->add_option("--trajectory", trajectory, "Comma-separated state ids (default: the scenario's)")
      ->expected(0, 1);
  run_cmd->add_option("--seed", seed, "Random seed (default: the scenario's)");
  run_cmd->add_flag("--json", run.json, "Emit the JSONL trace");

  OppsOptions opps;
  std::optional<int> horizon;
  auto* opps_cmd = app.add_subcommand("opps", "Tabulate every opportunity degree in one state");
  opps_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  opps_cmd->add_option("--state", opps.state, "State id")->required();
  opps_cmd->add_option("--K", horizon, "Lookahead horizon (default: the scenario's)");

  GraphOptions graph;
  std::string graph_out;
  auto* graph_cmd = app.add_subcommand("graph", "Export the state graph as DOT");
  graph_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  graph_cmd->add_option("--out", graph_out, "Output .dot path")->required();

  PlansOptions plans;
  auto* plans_cmd = app.add_subcommand("plans", "Show residual plans and the recognized intention");
  plans_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  plans_cmd->add_option("--state", plans.state, "State id")->required();

  auto* repl_cmd = app.add_subcommand("repl", "Step a session interactively");
  repl_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  repl_cmd->add_option("--mode", mode_text, "hir, eqm or combined")->check(mode_check);
  repl_cmd->add_option("--seed", seed, "Random seed (default: the scenario's)");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a session to the steering UI over HTTP");
  serve_cmd->add_option("--scenario", scenario, "Scenario file")->required();
  serve_cmd->add_option("--mode", mode_text, "hir, eqm or combined")->check(mode_check);
  serve_cmd->add_option("--seed", seed, "Random seed (default: the scenario's)");
  serve_cmd->add_option("--host", serve.host, "Address to bind (default: loopback)");
  serve_cmd->add_option("--port", serve.port, "Port, 0 for any free one")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream error_out;
    int code = app.exit(e, help_out, error_out);
    out << help_out.str();
    err << error_out.str();
    return code == 0 ? static_cast<int>(ok) : static_cast<int>(input_error);
  }

  const auto mode = parse_run_mode(mode_text);
  if (run_cmd->parsed()) {
    run.scenario = scenario;
    run.mode = mode;
    run.seed = seed;
    if (trajectory) run.trajectory = split_csv(*trajectory);
    return cmd_run(run, out, err);
  }
  if (opps_cmd->parsed()) {
    opps.scenario = scenario;
    opps.horizon = horizon;
    return cmd_opps(opps, out, err);
  }
  if (graph_cmd->parsed()) {
    graph.scenario = scenario;
    graph.out = graph_out;
    return cmd_graph(graph, out, err);
  }
  if (plans_cmd->parsed()) {
    plans.scenario = scenario;
    return cmd_plans(plans, out, err);
  }
  if (repl_cmd->parsed()) return cmd_repl(ReplOptions{scenario, mode, seed}, in, out, err);
  serve.scenario = scenario;
  serve.mode = mode;
  serve.seed = seed;
  return cmd_serve(serve, out, err);
}

}  // namespace proactive::cli
