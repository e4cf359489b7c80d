#pragma once

#include <optional>
#include <string>

#include "latte/env/relations.hpp"
#include "latte/typing/diagnostic.hpp"

namespace latte {

/// Result of trying to use a path at some usage annotation. On failure `env`
/// is empty and `rule`/`reason` name the premise that could not be met.
struct UseOutcome {
  std::optional<TypeEnv> env;
  Rule rule = Rule::Plumbing;
  std::string reason;
  std::string actual;  // annotation that blocked the use, when there is one

  explicit operator bool() const { return env.has_value(); }
};

/// Δ ⊢ p : want ⊣ Δ′, ignoring classes.
UseOutcome use_path(const ClassTable& table, const TypeEnv& env, const Path& p, const UsageAnno& want);

/// Usable at `want` without changing the environment (the form required by
/// E-FieldOwned, I-Replace*, R-SharedAlias and A-SharedAlias).
bool usable_in_place(const ClassTable& table, const TypeEnv& env, const Path& p, const UsageAnno& want);

/// Δ ⊢ e : want C ⊣ Δ′ with algorithmic subsumption. Throws TypeError.
TypeEnv type_expr(const ClassTable& table, const TypeEnv& env, const Expr& e, const UsageAnno& want,
                  const std::string& want_class);

/// Δ ⊢ p : C, reported as a TypeError tagged T-Var or T-Field.
std::string ref_type_or_throw(const ClassTable& table, const TypeEnv& env, const Path& p);

}  // namespace latte
