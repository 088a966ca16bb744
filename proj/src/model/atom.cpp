#include "proactive/model/atom.hpp"

#include <cctype>

#include "proactive/error.hpp"

namespace proactive {

Atom make_atom(std::string name, std::vector<std::string> args) { return Atom{std::move(name), std::move(args)}; }

std::string to_string(const Atom& atom) {
  std::string out = "(" + atom.name;
  for (const auto& arg : atom.args) {
    out += ' ';
    out += arg;
  }
  out += ')';
  return out;
}

Atom parse_atom(std::string_view text) {
  std::size_t i = 0;
  auto position = [&] { return SourcePosition{1, static_cast<int>(i) + 1}; };
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };

  skip_space();
  if (i >= text.size() || text[i] != '(') throw ParseError("expected '(' to open an atom", position());
  ++i;

  std::vector<std::string> symbols;
  for (;;) {
    skip_space();
    if (i >= text.size()) throw ParseError("unterminated atom", position());
    if (text[i] == ')') {
      ++i;
      break;
    }
    if (text[i] == '(') throw ParseError("nested list inside an atom", position());
    std::string symbol;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
           text[i] != ')') {
      symbol += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      ++i;
    }
    symbols.push_back(std::move(symbol));
  }
  skip_space();
  if (i != text.size()) throw ParseError("trailing characters after atom", position());
  if (symbols.empty()) throw ParseError("atom without a predicate name", position());

  Atom atom;
  atom.name = std::move(symbols.front());
  atom.args.assign(std::make_move_iterator(symbols.begin() + 1), std::make_move_iterator(symbols.end()));
  return atom;
}

AtomSet parse_atoms(const std::vector<std::string>& texts) {
  AtomSet out;
  for (const auto& text : texts) out.insert(parse_atom(text));
  return out;
}

std::vector<std::string> to_strings(const AtomSet& atoms) {
  std::vector<std::string> out;
  out.reserve(atoms.size());
  for (const auto& atom : atoms) out.push_back(to_string(atom));
  return out;
}

}  // namespace proactive
