#pragma once

#include <stdexcept>
#include <string>

namespace proactive {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourcePosition {
  int line = 1;
  int column = 1;

  bool operator==(const SourcePosition&) const = default;
};

/// Lexical or grammatical failure in PDDL or atom text. Always positioned.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourcePosition position);

  const SourcePosition& position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourcePosition position_;
  std::string detail_;
};

/// Structurally valid scenario document whose content is inconsistent.
class ScenarioError : public Error {
 public:
  enum class Kind {
    malformed,
    unsupported_format,
    dangling_state,
    duplicate_state,
    des_out_of_range,
    invalid_parameter,
    undeclared_symbol,
  };

  ScenarioError(Kind kind, const std::string& message);

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class UnknownState : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class NoSubstitution : public Error {
 public:
  using Error::Error;
};

class TrajectoryError : public Error {
 public:
  using Error::Error;
};

class IllegalPick : public Error {
 public:
  using Error::Error;
};

}  // namespace proactive
