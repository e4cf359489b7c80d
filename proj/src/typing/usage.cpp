#include "latte/typing/usage.hpp"

namespace latte {

namespace {

// Rule whose conclusion produces the wanted usage from a variable.
Rule rule_for_want(const UsageAnno& want) {
  switch (want.kind) {
    case UsageAnno::Kind::Owned:
      return Rule::EOwned;
    case UsageAnno::Kind::Shared:
      return Rule::EShared;
    case UsageAnno::Kind::Unique:
      return Rule::EUniqueUnique;
    case UsageAnno::Kind::UniqueInto:
      return Rule::EUniqueAlias;
  }
  return Rule::Plumbing;
}

UseOutcome fail(Rule rule, std::string reason, std::string actual = {}) {
  UseOutcome o;
  o.rule = rule;
  o.reason = std::move(reason);
  o.actual = std::move(actual);
  return o;
}

UseOutcome ok(TypeEnv env) {
  UseOutcome o;
  o.env = std::move(env);
  return o;
}

UseOutcome use_rec(const ClassTable& table, const TypeEnv& env, const Path& p, const UsageAnno& want,
                   std::size_t fuel) {
  if (fuel == 0) return fail(Rule::EAlias, "alias chain through '" + p.str() + "' does not terminate");

  if (!p.is_var()) {
    Path q = p.parent();
    const std::string& f = p.last_field();
    std::string q_class;
    try {
      q_class = ref_type_or_throw(table, env, q);
    } catch (const TypeError& e) {
      return fail(e.diagnostic().rule, e.diagnostic().message);
    }
    auto info = table.ftype(q_class, f);
    if (!info) return fail(Rule::TField, "class '" + q_class + "' has no field '" + f + "'");

    switch (want.kind) {
      case UsageAnno::Kind::Owned: {
        if (info->anno != DeclAnno::Unique) {
          return fail(Rule::EFieldOwned, "field '" + p.str() + "' is shared and cannot be borrowed as owned",
                      "shared");
        }
        UseOutcome inner = use_rec(table, env, q, UsageAnno::owned(), fuel - 1);
        if (!inner || !(*inner.env == env)) {
          return fail(Rule::EFieldOwned,
                      "cannot borrow unique field '" + p.str() + "': '" + q.str() + "' is not owned here" +
                          (inner ? "" : " (" + inner.reason + ")"),
                      inner.actual);
        }
        return ok(env);
      }
      case UsageAnno::Kind::Shared:
        if (info->anno != DeclAnno::Shared) {
          return fail(Rule::EFieldShared,
                      "unique field '" + p.str() + "' cannot be used as shared without a destructive read",
                      "unique");
        }
        return ok(env);
      case UsageAnno::Kind::Unique:
      case UsageAnno::Kind::UniqueInto:
        if (info->anno == DeclAnno::Shared) {
          return fail(rule_for_want(want), "shared field '" + p.str() + "' cannot be used as " + want.str(),
                      "shared");
        }
        return fail(rule_for_want(want),
                    "field '" + p.str() + "' cannot be consumed as " + want.str() +
                        "; read it into a variable and overwrite the field first",
                    "unique");
    }
    return fail(Rule::Plumbing, "unreachable");
  }

  const Binding* b = env.find(p.root);
  if (!b) return fail(Rule::TVar, "unknown variable '" + p.root + "'");
  const LocalAnno& a = b->anno;
  switch (a.kind) {
    case LocalAnno::Kind::Bottom:
      return fail(Rule::TVar, "variable '" + p.root + "' is inaccessible", a.str());
    case LocalAnno::Kind::Owned:
      if (want.kind == UsageAnno::Kind::Owned) return ok(env);
      return fail(rule_for_want(want), "owned variable '" + p.root + "' cannot be used as " + want.str(),
                  a.str());
    case LocalAnno::Kind::Shared:
      if (want.kind == UsageAnno::Kind::Shared) return ok(env);
      return fail(rule_for_want(want), "shared variable '" + p.root + "' cannot be used as " + want.str(),
                  a.str());
    case LocalAnno::Kind::Unique: {
      TypeEnv out = env;
      switch (want.kind) {
        case UsageAnno::Kind::Owned:
          break;
        case UsageAnno::Kind::Shared:
          out.set_anno(p.root, LocalAnno::shared());
          break;
        case UsageAnno::Kind::Unique:
          out.set_anno(p.root, LocalAnno::bottom());
          break;
        case UsageAnno::Kind::UniqueInto:
          out.set_anno(p.root, LocalAnno::alias(want.target));
          break;
      }
      return ok(std::move(out));
    }
    case LocalAnno::Kind::Alias: {
      UseOutcome inner = use_rec(table, env, a.target, want, fuel - 1);
      if (inner) return inner;
      return fail(Rule::EAlias,
                  "'" + p.root + "' aliases '" + a.target.str() + "', which cannot be used as " + want.str() +
                      ": " + inner.reason,
                  a.str());
    }
  }
  return fail(Rule::Plumbing, "unreachable");
}

}  // namespace

UseOutcome use_path(const ClassTable& table, const TypeEnv& env, const Path& p, const UsageAnno& want) {
  return use_rec(table, env, p, want, env.size() + p.depth() + 2);
}

bool usable_in_place(const ClassTable& table, const TypeEnv& env, const Path& p, const UsageAnno& want) {
  UseOutcome o = use_path(table, env, p, want);
  return o && *o.env == env;
}

std::string ref_type_or_throw(const ClassTable& table, const TypeEnv& env, const Path& p) {
  try {
    return ref_type(table, env, p);
  } catch (const RefTypeError& e) {
    Rule rule = e.kind() == RefTypeError::Kind::UnknownField ? Rule::TField : Rule::TVar;
    throw TypeError(rule, e.what());
  }
}

TypeEnv type_expr(const ClassTable& table, const TypeEnv& env, const Expr& e, const UsageAnno& want,
                  const std::string& want_class) {
  if (e.is_null()) return env;
  const Path& p = *e.path;
  std::string cls = ref_type_or_throw(table, env, p);
  if (!table.subtype(cls, want_class)) {
    throw TypeError(Rule::ESub, "'" + p.str() + "' has class " + cls + ", which is not a subclass of " + want_class,
                    want_class, cls);
  }
  UseOutcome o = use_path(table, env, p, want);
  if (!o) throw TypeError(o.rule, o.reason, want.str(), o.actual);
  return std::move(*o.env);
}

}  // namespace latte
