#pragma once

#include <stdexcept>
#include <string>

#include "latte/env/type_env.hpp"
#include "latte/syntax/class_table.hpp"

namespace latte {

/// Rewrites the root of `p` through alias annotations until it reaches a
/// variable that is not an alias. Stops early if an alias cycle is detected.
Path canonicalize(const TypeEnv& env, const Path& p);

/// p1 ≡ p2: both paths denote the same value.
bool alias_equiv(const TypeEnv& env, const Path& p1, const Path& p2);

/// p1 ≈ p2: p1 may be aliased with a value reachable from p2. Every path is
/// related to its root, so this reduces to connectivity of roots through
/// alias edges.
bool reach_alias(const TypeEnv& env, const Path& p1, const Path& p2);

/// x ⇝ p: x is annotated alias(t) and t is equivalent to p or an extension of p.
bool connects(const TypeEnv& env, const std::string& x, const Path& p);

/// Δ[new / old]: rewrites every alias target, leaving other annotations alone.
TypeEnv replace_env(const TypeEnv& env, const Path& old_path, const Path& new_path);

class RefTypeError : public std::runtime_error {
 public:
  enum class Kind { UnboundVariable, Inaccessible, UnknownField };
  RefTypeError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Δ ⊢ p : C. Throws RefTypeError.
std::string ref_type(const ClassTable& table, const TypeEnv& env, const Path& p);
/// Class of `p` ignoring accessibility of the root; nullopt on unknown names.
std::optional<std::string> declared_class(const ClassTable& table, const TypeEnv& env, const Path& p);

}  // namespace latte
