#include "proactive/error.hpp"

#include <fmt/format.h>

namespace proactive {

ParseError::ParseError(const std::string& message, SourcePosition position)
    : Error(fmt::format("{}:{}: {}", position.line, position.column, message)),
      position_(position),
      detail_(message) {}

ScenarioError::ScenarioError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

}  // namespace proactive
