#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "latte/syntax/ast.hpp"

namespace latte {

/// Malformed source text, or a program that cannot form a class table
/// (unknown parent, inheritance cycle, duplicate field, ...).
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, SourceSpan span) : std::runtime_error(msg), span_(span) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Parses surface syntax. The result may still contain sugar nodes.
Program parse_surface(std::string_view source);

/// Rewrites `C x = e;`, `||`, `&&`, `!=` and else-less `if` into the core grammar.
Program desugar(Program program);

/// parse_surface followed by desugar.
Program parse_program(std::string_view source);

}  // namespace latte
