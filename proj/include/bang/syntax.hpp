#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bang/term.hpp"

namespace bang {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct ParseOptions {
  // Reject terms with free variables.
  bool strict = false;
};

// Grammar:
//   term  := abs | app            abs  := ("\" | "λ") ident "." term
//   app   := app post | post      post := atom { "[" ident ("\" | ":=") term "]" }
//   atom  := ident | "!" atom | "der" atom | "(" term ")"
Term parse_term(std::string_view text, ParseOptions options = {});
std::string print_term(const Term& t);

}  // namespace bang
