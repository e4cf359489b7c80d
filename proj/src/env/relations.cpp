#include "latte/env/relations.hpp"

#include <map>
#include <set>

namespace latte {

Path canonicalize(const TypeEnv& env, const Path& p) {
  Path cur = p;
  std::set<std::string> seen;
  while (true) {
    const Binding* b = env.find(cur.root);
    if (!b || !b->anno.is_alias() || !seen.insert(cur.root).second) return cur;
    Path next = b->anno.target;
    next.fields.insert(next.fields.end(), cur.fields.begin(), cur.fields.end());
    cur = std::move(next);
  }
}

bool alias_equiv(const TypeEnv& env, const Path& p1, const Path& p2) {
  return p1 == p2 || canonicalize(env, p1) == canonicalize(env, p2);
}

namespace {

std::string find_root(std::map<std::string, std::string>& parent, const std::string& x) {
  auto it = parent.find(x);
  if (it == parent.end()) return x;
  if (it->second == x) return x;
  std::string r = find_root(parent, it->second);
  parent[x] = r;
  return r;
}

}  // namespace

bool reach_alias(const TypeEnv& env, const Path& p1, const Path& p2) {
  if (p1.root == p2.root) return true;
  std::map<std::string, std::string> parent;
  for (const Binding& b : env.bindings()) {
    if (!b.anno.is_alias()) continue;
    std::string a = find_root(parent, b.var);
    std::string c = find_root(parent, b.anno.target.root);
    if (a != c) parent[a] = c;
  }
  return find_root(parent, p1.root) == find_root(parent, p2.root);
}

bool connects(const TypeEnv& env, const std::string& x, const Path& p) {
  const Binding* b = env.find(x);
  if (!b || !b->anno.is_alias()) return false;
  return canonicalize(env, b->anno.target).has_prefix(canonicalize(env, p));
}

TypeEnv replace_env(const TypeEnv& env, const Path& old_path, const Path& new_path) {
  std::vector<Binding> out = env.bindings();
  for (Binding& b : out) {
    if (b.anno.is_alias()) b.anno.target = replace_path(b.anno.target, old_path, new_path);
  }
  return TypeEnv(std::move(out));
}

namespace {

std::string walk_fields(const ClassTable& table, std::string cls, const Path& p) {
  for (const std::string& f : p.fields) {
    auto info = table.ftype(cls, f);
    if (!info) {
      throw RefTypeError(RefTypeError::Kind::UnknownField, "class '" + cls + "' has no field '" + f + "'");
    }
    cls = info->class_name;
  }
  return cls;
}

}  // namespace

std::string ref_type(const ClassTable& table, const TypeEnv& env, const Path& p) {
  const Binding* b = env.find(p.root);
  if (!b) throw RefTypeError(RefTypeError::Kind::UnboundVariable, "unknown variable '" + p.root + "'");
  if (b->anno.is_bottom()) {
    throw RefTypeError(RefTypeError::Kind::Inaccessible, "variable '" + p.root + "' is inaccessible");
  }
  return walk_fields(table, b->class_name, p);
}

std::optional<std::string> declared_class(const ClassTable& table, const TypeEnv& env, const Path& p) {
  const Binding* b = env.find(p.root);
  if (!b) return std::nullopt;
  try {
    return walk_fields(table, b->class_name, p);
  } catch (const RefTypeError&) {
    return std::nullopt;
  }
}

}  // namespace latte
