#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "proactive/pddl/scenario.hpp"
#include "proactive/select/select.hpp"

namespace proactive::testing {

inline const std::filesystem::path kSourceDir = PROACTIVE_SOURCE_DIR;

inline std::filesystem::path source_path(const std::string& relative) { return kSourceDir / relative; }

inline std::string read_source(const std::string& relative) { return pddl::read_text_file(source_path(relative)); }

inline const pddl::ScenarioFile& domestic_scenario() {
  static const auto scenario = pddl::load_scenario(source_path("scenarios/domestic/domestic.scenario.json"));
  return scenario;
}

inline std::shared_ptr<const Knowledge> domestic_knowledge() {
  static const auto knowledge = std::make_shared<const Knowledge>(compile(domestic_scenario()));
  return knowledge;
}

inline AtomSet atoms_of(const std::string& id) {
  const auto& system = domestic_knowledge()->system;
  return system.state(system.index_of(id)).atoms;
}

}  // namespace proactive::testing
