#include "proactive/pddl/sexpr.hpp"

#include <cctype>

namespace proactive::pddl {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    for (;;) {
      skip_blank();
      if (at_end()) return out;
      out.push_back(read());
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  SourcePosition here() const { return {line_, column_}; }

  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  SExpr read() {
    SExpr expr;
    expr.position = here();
    if (peek() == ')') throw ParseError("unexpected ')'", here());
    if (peek() == '(') {
      advance();
      expr.kind = SExpr::Kind::list;
      for (;;) {
        skip_blank();
        if (at_end()) throw ParseError("unterminated list opened here", expr.position);
        if (peek() == ')') {
          advance();
          return expr;
        }
        expr.items.push_back(read());
      }
    }
    expr.kind = SExpr::Kind::symbol;
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      if (!std::isprint(static_cast<unsigned char>(c))) throw ParseError("invalid character", here());
      expr.text += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      advance();
    }
    return expr;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

}  // namespace proactive::pddl
