#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace proactive {

/// A predicate applied to object identifiers, e.g. (gathered backpack).
/// Lifted atoms use variables ("?o") as arguments.
struct Atom {
  std::string name;
  std::vector<std::string> args;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

/// Ordered by name, then arguments; the order is the canonical serialization order.
using AtomSet = std::set<Atom>;

Atom make_atom(std::string name, std::vector<std::string> args = {});

/// "(gathered backpack)"; a nullary atom renders as "(human-at-home)".
std::string to_string(const Atom& atom);

/// Inverse of to_string. Symbols are lower-cased. Throws ParseError.
Atom parse_atom(std::string_view text);

AtomSet parse_atoms(const std::vector<std::string>& texts);
std::vector<std::string> to_strings(const AtomSet& atoms);

inline bool is_variable(std::string_view symbol) { return !symbol.empty() && symbol.front() == '?'; }

}  // namespace proactive
