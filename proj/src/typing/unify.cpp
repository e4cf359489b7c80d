#include "latte/typing/unify.hpp"

#include "latte/typing/isolation.hpp"
#include "latte/typing/usage.hpp"

namespace latte {

bool precedes(const ClassTable& table, const TypeEnv& env, const LocalAnno& a1, const LocalAnno& a2) {
  using K = LocalAnno::Kind;
  if (a1 == a2) return true;                                         // A-Id
  if (a1.kind == K::Bottom) return true;                             // A-Inacc
  if (a1.kind == K::Shared && a2.kind == K::Unique) return true;     // A-Shared
  if (a1.kind == K::Alias && a2.kind == K::Alias) {                  // A-Alias
    return alias_equiv(env, a1.target, a2.target);
  }
  if (a1.kind == K::Shared && a2.kind == K::Alias && !a2.target.is_var()) {  // A-SharedAlias
    return usable_in_place(table, env, a2.target, UsageAnno::shared());
  }
  return false;
}

TypeEnv isolate_locals(const ClassTable& table, const TypeEnv& parent, const TypeEnv& branch) {
  TypeEnv out = branch;
  for (const Binding& b : branch.bindings()) {
    if (!parent.contains(b.var)) out = isolate(table, out, Path(b.var));
  }
  return out;
}

namespace {

// A path both branch targets are equivalent to, rooted in a variable of the
// parent that neither branch aliases. Canonical forms are unique, so there
// is at most one candidate.
std::optional<Path> common_alias(const TypeEnv& parent, const TypeEnv& left, const TypeEnv& right,
                                 const std::string& x, const Path& t1, const Path& t2) {
  Path c1 = canonicalize(left, t1);
  Path c2 = canonicalize(right, t2);
  if (c1 != c2 || c1.root == x || !parent.contains(c1.root)) return std::nullopt;
  auto a1 = left.anno(c1.root);
  auto a2 = right.anno(c1.root);
  if (!a1 || !a2 || a1->is_alias() || a2->is_alias()) return std::nullopt;
  return c1;
}

LocalAnno join(const ClassTable& table, const TypeEnv& parent, const TypeEnv& left, const TypeEnv& right,
               const std::string& x, const LocalAnno& a1, const LocalAnno& a2) {
  if (a1 == a2) return a1;
  if (a1.is_alias() && a2.is_alias()) {
    if (auto p = common_alias(parent, left, right, x, a1.target, a2.target)) return LocalAnno::alias(*p);
  }
  // The lesser annotation, as long as it does not mention paths of one branch.
  if (!a1.is_alias() && precedes(table, right, a1, a2)) return a1;
  if (!a2.is_alias() && precedes(table, left, a2, a1)) return a2;
  if (precedes(table, left, LocalAnno::shared(), a1) && precedes(table, right, LocalAnno::shared(), a2)) {
    return LocalAnno::shared();
  }
  return LocalAnno::bottom();
}

}  // namespace

TypeEnv unify(const ClassTable& table, const TypeEnv& parent, const TypeEnv& left, const TypeEnv& right) {
  TypeEnv l = isolate_locals(table, parent, left);
  TypeEnv r = isolate_locals(table, parent, right);
  std::vector<Binding> out;
  out.reserve(parent.size());
  for (const Binding& b : parent.bindings()) {
    auto a1 = l.anno(b.var);
    auto a2 = r.anno(b.var);
    LocalAnno joined = a1 && a2 ? join(table, parent, l, r, b.var, *a1, *a2) : LocalAnno::bottom();
    out.push_back({b.var, joined, b.class_name});
  }
  return TypeEnv(std::move(out));
}

}  // namespace latte
