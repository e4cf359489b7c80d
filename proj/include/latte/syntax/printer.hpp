#pragma once

#include <string>

#include "latte/syntax/ast.hpp"

namespace latte {

/// Renders a core program back to concrete syntax. Parsing the output yields
/// the same core AST (modulo source positions).
std::string print_program(const Program& program);
std::string print_stmt(const Stmt& s, int indent = 0);

/// Structural equality that ignores source spans.
bool same_program(const Program& a, const Program& b);

}  // namespace latte
