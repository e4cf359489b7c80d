#pragma once

#include "latte/env/relations.hpp"

namespace latte {

/// Δ ⊢ a1 ⪯ a2: a1 may be used in place of a2.
bool precedes(const ClassTable& table, const TypeEnv& env, const LocalAnno& a1, const LocalAnno& a2);

/// Joins the environments of two branches that both started from `parent`.
/// The result binds exactly the variables of `parent`, with their classes.
TypeEnv unify(const ClassTable& table, const TypeEnv& parent, const TypeEnv& left, const TypeEnv& right);

/// U-Isolate: isolates every variable not bound in `parent`, in declaration order.
TypeEnv isolate_locals(const ClassTable& table, const TypeEnv& parent, const TypeEnv& branch);

}  // namespace latte
