#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "proactive/error.hpp"

namespace proactive::pddl {

/// A symbol or a parenthesized list, with the position of its first character.
struct SExpr {
  enum class Kind { symbol, list };

  Kind kind = Kind::list;
  std::string text;
  std::vector<SExpr> items;
  SourcePosition position;

  bool is_symbol() const noexcept { return kind == Kind::symbol; }
  bool is_list() const noexcept { return kind == Kind::list; }
  bool is_symbol(std::string_view value) const { return is_symbol() && text == value; }
};

/// Reads every top-level expression. Symbols are lower-cased and ';' starts a
/// comment that runs to the end of the line. Throws ParseError.
std::vector<SExpr> read_sexprs(std::string_view text);

}  // namespace proactive::pddl
