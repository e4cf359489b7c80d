#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "latte/env/type_env.hpp"
#include "latte/syntax/class_table.hpp"

namespace latte {

struct EnvBounds {
  int max_vars = 4;
  int max_classes = 3;
  int max_fields = 2;  // fields are named f, g
  int max_target_depth = 2;
};

struct RandomEnv {
  std::string source;  // the classes, as Latte source
  ClassTable table;
  TypeEnv env;
};

/// Deterministic in `seed`. Alias targets are well-typed paths rooted in
/// variables created earlier, so alias chains are acyclic; binding order is
/// an independent shuffle.
RandomEnv gen_random_env(std::uint64_t seed, const EnvBounds& bounds = {});

/// Random class table only (no variables).
std::string gen_random_classes(std::mt19937_64& rng, const EnvBounds& bounds);

struct ProgramBounds {
  int max_classes = 3;
  int max_fields = 2;
  int max_methods = 3;
  int max_params = 2;
  int max_stmts = 8;
  int max_nesting = 2;
};

/// Random, mostly well-typed-by-class program text using the surface syntax
/// (including the `||`, `&&`, `!=` and `C x = e;` sugar). Deterministic in `seed`.
std::string gen_random_program(std::uint64_t seed, const ProgramBounds& bounds = {});

/// Uniform integer in [0, n) that does not depend on the standard library's
/// distribution implementation.
inline int pick(std::mt19937_64& rng, int n) { return n <= 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

}  // namespace latte
