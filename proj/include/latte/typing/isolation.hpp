#pragma once

#include <vector>

#include "latte/env/relations.hpp"

namespace latte {

/// Δ * p ⊣ Δ′: removes every reference to `p` from the environment before
/// `p` is overwritten. Aliases of a field path are promoted (unique, shared
/// or ⊥ depending on how the path itself may be used); a variable's own
/// binding is removed after its aliases have been redirected. Never fails.
TypeEnv isolate(const ClassTable& table, const TypeEnv& env, const Path& p);

/// Δ ★ p1..pn ⊣ Δ′: downgrades aliases into fields that a call on these
/// paths may overwrite. Null arguments contribute nothing.
TypeEnv frame(const ClassTable& table, const TypeEnv& env, const std::vector<Expr>& args);

/// Replaces, in every alias target except `skip`'s, the shortest field-path
/// prefix equivalent to `old_path` (judged in `env`) by `new_path`.
TypeEnv replace_equivalent(const TypeEnv& env, const Path& old_path, const Path& new_path,
                           const std::string& skip);

}  // namespace latte
