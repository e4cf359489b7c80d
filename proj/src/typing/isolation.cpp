#include "latte/typing/isolation.hpp"

#include "latte/typing/usage.hpp"

namespace latte {

namespace {

// The field of canon(target(y)) that follows canon(p), for y ⇝ p with a
// strictly longer target.
std::optional<std::string> next_field(const TypeEnv& env, const Binding& y, const Path& p) {
  Path t = canonicalize(env, y.anno.target);
  Path c = canonicalize(env, p);
  if (!t.has_prefix(c) || t.depth() <= c.depth()) return std::nullopt;
  return t.fields[c.depth()];
}

const Binding* first_connected(const TypeEnv& env, const Path& p, const std::string& skip = {}) {
  for (const Binding& b : env.bindings()) {
    if (b.var != skip && connects(env, b.var, p)) return &b;
  }
  return nullptr;
}

TypeEnv isolate_field(const ClassTable& table, TypeEnv env, const Path& p, int fuel);
TypeEnv isolate_var(const ClassTable& table, TypeEnv env, const std::string& x, int fuel);

TypeEnv isolate_field(const ClassTable& table, TypeEnv env, const Path& p, int fuel) {
  while (fuel-- > 0) {
    if (!first_connected(env, p)) return env;  // I-RemoveField

    // I-ReplaceUnique / I-ReplaceShared / I-ReplaceInaccessible.
    const Binding* x = nullptr;
    for (const Binding& b : env.bindings()) {
      if (b.anno.is_alias() && !b.anno.target.is_var() && alias_equiv(env, b.anno.target, p)) {
        x = &b;
        break;
      }
    }
    if (x) {
      LocalAnno promoted = LocalAnno::bottom();
      if (usable_in_place(table, env, p, UsageAnno::owned())) {
        promoted = LocalAnno::unique();
      } else if (usable_in_place(table, env, p, UsageAnno::shared())) {
        promoted = LocalAnno::shared();
      }
      std::string name = x->var;
      TypeEnv out = replace_equivalent(env, p, Path(name), name);
      out.set_anno(name, promoted);
      env = std::move(out);
      continue;
    }

    // I-ElimField: isolate the deeper path some alias goes through first.
    const Binding* y = first_connected(env, p);
    auto g = next_field(env, *y, p);
    if (!g) return env;  // only reachable through an alias cycle
    env = isolate_field(table, std::move(env), p.field(*g), fuel);
  }
  return env;
}

TypeEnv isolate_var(const ClassTable& table, TypeEnv env, const std::string& x, int fuel) {
  while (fuel-- > 0) {
    const Binding* b = env.find(x);
    if (!b) return env;

    if (b->anno.is_alias()) {  // I-ReplaceAlias
      Path target = b->anno.target;
      env.erase(x);
      return replace_env(env, Path(x), target);
    }

    const Path px(x);
    for (const Binding& y : env.bindings()) {  // I-ReplaceAliased
      if (y.var != x && y.anno.is_alias() && canonicalize(env, Path(y.var)) == px) {
        std::string name = y.var;
        LocalAnno a = b->anno;
        env.set_anno(name, a);
        env.erase(x);
        return replace_env(env, px, Path(name));
      }
    }

    const Binding* y = first_connected(env, px, x);
    if (!y) {  // I-RemoveVar
      env.erase(x);
      return env;
    }
    auto g = next_field(env, *y, px);  // I-ElimVar
    if (!g) {
      env.erase(x);
      return env;
    }
    env = isolate_field(table, std::move(env), px.field(*g), fuel);
  }
  env.erase(x);
  return env;
}

}  // namespace

TypeEnv replace_equivalent(const TypeEnv& env, const Path& old_path, const Path& new_path,
                           const std::string& skip) {
  std::vector<Binding> out = env.bindings();
  for (Binding& b : out) {
    if (b.var == skip || !b.anno.is_alias()) continue;
    const Path& t = b.anno.target;
    for (std::size_t n = 1; n <= t.depth(); ++n) {
      Path pre = t.prefix(n);
      if (alias_equiv(env, pre, old_path)) {
        b.anno.target = replace_path(t, pre, new_path);
        break;
      }
    }
  }
  return TypeEnv(std::move(out));
}

TypeEnv isolate(const ClassTable& table, const TypeEnv& env, const Path& p) {
  // Every step removes a connection or a binding; the bound only guards
  // against alias cycles, which the checker never builds.
  int fuel = static_cast<int>(4 * (env.size() + 1) * (env.size() + p.depth() + 4));
  if (p.is_var()) return isolate_var(table, env, p.root, fuel);
  return isolate_field(table, env, p, fuel);
}

TypeEnv frame(const ClassTable& table, const TypeEnv& env, const std::vector<Expr>& args) {
  TypeEnv cur = env;
  for (const Expr& e : args) {
    if (e.is_null()) continue;
    const Path c = canonicalize(cur, *e.path);
    std::vector<Binding> out = cur.bindings();
    for (Binding& b : out) {
      if (!b.anno.is_alias()) continue;  // R-Shared
      Path t = canonicalize(cur, b.anno.target);
      if (!t.has_prefix(c) || t.depth() == c.depth()) continue;  // R-Separate
      const bool shareable = usable_in_place(table, cur, b.anno.target, UsageAnno::shared());
      b.anno = shareable ? LocalAnno::shared() : LocalAnno::bottom();  // R-SharedAlias / R-Inaccessible
    }
    cur = TypeEnv(std::move(out));
  }
  return cur;
}

}  // namespace latte
