#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace oracle {

using latte::Binding;

namespace {

void collect(const Path& p, std::set<std::string>& roots, std::set<std::string>& fields) {
  roots.insert(p.root);
  fields.insert(p.fields.begin(), p.fields.end());
}

bool prefix_of(const Path& pre, const Path& p) {
  if (pre.root != p.root || pre.fields.size() > p.fields.size()) return false;
  return std::equal(pre.fields.begin(), pre.fields.end(), p.fields.begin());
}

Path substitute(const Path& p, const Path& old_prefix, const Path& replacement) {
  if (!prefix_of(old_prefix, p)) return p;
  Path out = replacement;
  out.fields.insert(out.fields.end(), p.fields.begin() + static_cast<std::ptrdiff_t>(old_prefix.fields.size()),
                    p.fields.end());
  return out;
}

}  // namespace

std::size_t needed_depth(const TypeEnv& env, std::size_t query_depth) {
  std::size_t d = query_depth;
  for (const Binding& b : env.bindings()) {
    if (b.anno.is_alias()) d += b.anno.target.fields.size();
  }
  return d;
}

EquivClosure::EquivClosure(const TypeEnv& env, const std::vector<Path>& extra, std::size_t depth) : env_(env) {
  std::set<std::string> roots, fields;
  for (const Binding& b : env.bindings()) {
    roots.insert(b.var);
    if (b.anno.is_alias()) collect(b.anno.target, roots, fields);
  }
  for (const Path& p : extra) collect(p, roots, fields);
  fields_.assign(fields.begin(), fields.end());

  // Breadth-first construction of the path trie.
  for (const std::string& r : roots) {
    int id = static_cast<int>(children_.size());
    roots_[r] = id;
    children_.emplace_back(fields_.size(), -1);
    std::vector<int> frontier{id};
    for (std::size_t d = 0; d < depth; ++d) {
      std::vector<int> next;
      for (int n : frontier) {
        for (std::size_t k = 0; k < fields_.size(); ++k) {
          int c = static_cast<int>(children_.size());
          children_.emplace_back(fields_.size(), -1);
          children_[static_cast<std::size_t>(n)][k] = c;
          next.push_back(c);
        }
      }
      frontier = std::move(next);
    }
  }
  parent_.resize(children_.size());
  for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);

  for (const Binding& b : env.bindings()) {  // A-Var
    if (!b.anno.is_alias()) continue;
    int t = node(b.anno.target);
    if (t >= 0) unite(node(Path(b.var)), t);
  }
  // A-Cong to fixpoint; A-Refl/Symm/Trans are the union-find itself.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<int, std::vector<int>> first;
    for (std::size_t n = 0; n < children_.size(); ++n) {
      int r = find(static_cast<int>(n));
      auto& slots = first[r];
      if (slots.empty()) slots.assign(fields_.size(), -1);
      for (std::size_t k = 0; k < fields_.size(); ++k) {
        int c = children_[n][k];
        if (c < 0) continue;
        if (slots[k] < 0) {
          slots[k] = c;
        } else if (unite(slots[k], c)) {
          changed = true;
        }
      }
    }
  }
}

int EquivClosure::node(const Path& p) const {
  auto it = roots_.find(p.root);
  if (it == roots_.end()) return -1;
  int n = it->second;
  for (const std::string& f : p.fields) {
    auto k = std::find(fields_.begin(), fields_.end(), f);
    if (k == fields_.end()) return -1;
    n = children_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k - fields_.begin())];
    if (n < 0) return -1;
  }
  return n;
}

int EquivClosure::find(int n) {
  while (parent_[static_cast<std::size_t>(n)] != n) {
    parent_[static_cast<std::size_t>(n)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(n)])];
    n = parent_[static_cast<std::size_t>(n)];
  }
  return n;
}

bool EquivClosure::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  return true;
}

bool EquivClosure::equiv(const Path& a, const Path& b) {
  if (a == b) return true;
  int na = node(a), nb = node(b);
  return na >= 0 && nb >= 0 && find(na) == find(nb);
}

bool EquivClosure::connects(const std::string& x, const Path& p) {
  const Binding* b = env_.find(x);
  if (!b || !b->anno.is_alias()) return false;
  int t = node(b->anno.target);
  int start = node(p);
  if (t < 0 || start < 0) return false;
  int rt = find(t);
  std::vector<int> work{start};
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    if (find(n) == rt) return true;
    for (int c : children_[static_cast<std::size_t>(n)]) {
      if (c >= 0) work.push_back(c);
    }
  }
  return false;
}

ReachClosure::ReachClosure(const TypeEnv& env, const std::vector<Path>& queries) {
  std::vector<Path> universe;
  auto add_prefixes = [&](const Path& p) {
    for (std::size_t n = 0; n <= p.fields.size(); ++n) {
      Path pre = p.prefix(n);
      if (index_.emplace(pre, universe.size()).second) universe.push_back(pre);
    }
  };
  for (const Path& q : queries) add_prefixes(q);
  for (const Binding& x : env.bindings()) {
    add_prefixes(Path(x.var));
    if (x.anno.is_alias()) add_prefixes(x.anno.target);
  }
  const std::size_t n = universe.size();
  if (n > kMaxPaths) throw std::length_error("ReachClosure: too many paths");
  rel_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) rel_[i].set(i);  // RA-Refl
  for (const Binding& x : env.bindings()) {            // RA-Var
    if (x.anno.is_alias()) rel_[index(Path(x.var))].set(index(x.anno.target));
  }
  std::vector<std::ptrdiff_t> parent(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    if (!universe[k].fields.empty()) parent[k] = static_cast<std::ptrdiff_t>(index(universe[k].parent()));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    auto merge = [&](std::size_t i, const std::bitset<kMaxPaths>& bits) {
      auto before = rel_[i];
      rel_[i] |= bits;
      if (rel_[i] != before) changed = true;
    };
    for (std::size_t i = 0; i < n; ++i) {  // RA-Symm
      for (std::size_t j = 0; j < n; ++j) {
        if (rel_[i][j] && !rel_[j][i]) {
          rel_[j].set(i);
          changed = true;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) {  // RA-Field: p ≈ q gives p.f ≈ q
      if (parent[k] >= 0) merge(k, rel_[static_cast<std::size_t>(parent[k])]);
    }
    for (std::size_t k = 0; k < n; ++k) {  // RA-Trans
      for (std::size_t i = 0; i < n; ++i) {
        if (rel_[i][k]) merge(i, rel_[k]);
      }
    }
  }
}

std::size_t ReachClosure::index(const Path& p) const { return index_.at(p); }

bool ReachClosure::reach(const Path& a, const Path& b) const { return rel_[index(a)][index(b)]; }

bool reach(const TypeEnv& env, const Path& a, const Path& b) { return ReachClosure(env, {a, b}).reach(a, b); }

namespace {

std::optional<std::string> class_of(const latte::ClassTable& table, const TypeEnv& env, const Path& p,
                                    bool require_accessible) {
  const Binding* b = env.find(p.root);
  if (!b || (require_accessible && b->anno.is_bottom())) return std::nullopt;
  std::string cls = b->class_name;
  for (const std::string& f : p.fields) {
    auto info = table.ftype(cls, f);
    if (!info) return std::nullopt;
    cls = info->class_name;
  }
  return cls;
}

bool owned_rec(const latte::ClassTable& table, const TypeEnv& env, const Path& p, int fuel) {
  if (fuel <= 0) return false;
  if (p.fields.empty()) {
    const Binding* b = env.find(p.root);
    if (!b) return false;
    if (b->anno.kind == LocalAnno::Kind::Owned || b->anno.kind == LocalAnno::Kind::Unique) return true;
    if (b->anno.is_alias()) return owned_rec(table, env, b->anno.target, fuel - 1);
    return false;
  }
  Path q = p.parent();
  auto cls = class_of(table, env, q, true);
  if (!cls) return false;
  auto info = table.ftype(*cls, p.fields.back());
  return info && info->anno == latte::DeclAnno::Unique && owned_rec(table, env, q, fuel - 1);
}

bool shared_rec(const latte::ClassTable& table, const TypeEnv& env, const Path& p, int fuel) {
  if (fuel <= 0) return false;
  if (p.fields.empty()) {
    const Binding* b = env.find(p.root);
    if (!b) return false;
    if (b->anno.kind == LocalAnno::Kind::Shared) return true;
    if (b->anno.is_alias()) return shared_rec(table, env, b->anno.target, fuel - 1);
    return false;
  }
  Path q = p.parent();
  auto cls = class_of(table, env, q, true);
  if (!cls) return false;
  auto info = table.ftype(*cls, p.fields.back());
  return info && info->anno == latte::DeclAnno::Shared;
}

}  // namespace

bool owned_in_place(const latte::ClassTable& table, const TypeEnv& env, const Path& p) {
  return owned_rec(table, env, p, 32);
}

bool shared_in_place(const latte::ClassTable& table, const TypeEnv& env, const Path& p) {
  return shared_rec(table, env, p, 32);
}

namespace {

TypeEnv without(const TypeEnv& env, const std::string& x) {
  std::vector<Binding> out;
  for (const Binding& b : env.bindings()) {
    if (b.var != x) out.push_back(b);
  }
  return TypeEnv(std::move(out));
}

// Δ[new / old] with a syntactic prefix match.
TypeEnv substitute_env(const TypeEnv& env, const Path& old_prefix, const Path& replacement) {
  std::vector<Binding> out = env.bindings();
  for (Binding& b : out) {
    if (b.anno.is_alias()) b.anno.target = substitute(b.anno.target, old_prefix, replacement);
  }
  return TypeEnv(std::move(out));
}

class Search {
 public:
  explicit Search(const latte::ClassTable& table) : table_(table) {}

  std::map<std::string, TypeEnv> run(const TypeEnv& env, const Path& p, int budget) {
    std::string key = env.str() + " * " + p.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::map<std::string, TypeEnv> out;
    if (budget > 0) {
      if (p.fields.empty()) {
        isolate_var(env, p.root, budget, out);
      } else {
        isolate_field(env, p, budget, out);
      }
    }
    memo_[key] = out;
    return out;
  }

 private:
  static void add(std::map<std::string, TypeEnv>& out, TypeEnv e) { out.emplace(e.str(), std::move(e)); }

  void isolate_field(const TypeEnv& env, const Path& p, int budget, std::map<std::string, TypeEnv>& out) {
    EquivClosure c(env, {p}, needed_depth(env, p.fields.size()));
    std::vector<std::string> connected;
    for (const Binding& b : env.bindings()) {
      if (c.connects(b.var, p)) connected.push_back(b.var);
    }
    if (connected.empty()) add(out, env);  // I-RemoveField

    const Path q = p.parent();
    const std::string& f = p.fields.back();
    for (const Binding& x : env.bindings()) {  // I-Replace*
      if (!x.anno.is_alias() || x.anno.target.fields.empty()) continue;
      const Path& t = x.anno.target;
      if (t.fields.back() != f || !c.equiv(t.parent(), q)) continue;
      std::vector<LocalAnno> promoted{LocalAnno::bottom()};
      if (owned_in_place(table_, env, p)) promoted.push_back(LocalAnno::unique());
      if (shared_in_place(table_, env, p)) promoted.push_back(LocalAnno::shared());
      std::vector<Binding> replaced = env.bindings();
      for (Binding& b : replaced) {
        if (b.var == x.var || !b.anno.is_alias()) continue;
        for (std::size_t n = 1; n <= b.anno.target.fields.size(); ++n) {
          Path pre(b.anno.target.root, std::vector<std::string>(b.anno.target.fields.begin(),
                                                                b.anno.target.fields.begin() +
                                                                    static_cast<std::ptrdiff_t>(n)));
          if (c.equiv(pre, p)) {
            b.anno.target = substitute(b.anno.target, pre, Path(x.var));
            break;
          }
        }
      }
      for (const LocalAnno& a : promoted) {
        std::vector<Binding> e = replaced;
        for (Binding& b : e) {
          if (b.var == x.var) b.anno = a;
        }
        add(out, TypeEnv(std::move(e)));
      }
    }

    bool some_equiv = false;  // I-ElimField requires no variable ≡ p
    for (const Binding& b : env.bindings()) some_equiv = some_equiv || c.equiv(Path(b.var), p);
    if (some_equiv) return;
    for (const std::string& y : connected) {
      for (const std::string& g : field_names(env, p)) {
        Path pg = p.field(g);
        if (!c.connects(y, pg)) continue;
        for (const auto& [k1, e1] : run(env, pg, budget - 1)) {
          for (auto& [k2, e2] : run(e1, p, budget - 1)) add(out, e2);
        }
      }
    }
  }

  void isolate_var(const TypeEnv& env, const std::string& x, int budget, std::map<std::string, TypeEnv>& out) {
    const Binding* bx = env.find(x);
    if (!bx) {
      add(out, env);
      return;
    }
    const Path px(x);
    EquivClosure c(env, {px}, needed_depth(env, 0));
    bool any_connected = false;
    for (const Binding& y : env.bindings()) {
      if (y.var != x && c.connects(y.var, px)) any_connected = true;
    }
    if (!any_connected) add(out, without(env, x));  // I-RemoveVar
    if (bx->anno.is_alias()) {                       // I-ReplaceAlias
      add(out, substitute_env(without(env, x), px, bx->anno.target));
      return;
    }
    bool some_equiv = false;
    for (const Binding& y : env.bindings()) {  // I-ReplaceAliased
      if (y.var == x || !c.equiv(Path(y.var), px)) continue;
      some_equiv = true;
      std::vector<Binding> e = env.bindings();
      for (Binding& b : e) {
        if (b.var == y.var) b.anno = bx->anno;
      }
      add(out, substitute_env(without(TypeEnv(std::move(e)), x), px, Path(y.var)));
    }
    if (some_equiv) return;
    for (const Binding& y : env.bindings()) {  // I-ElimVar
      if (y.var == x) continue;
      for (const std::string& g : field_names(env, px)) {
        Path xg = px.field(g);
        if (!c.connects(y.var, xg)) continue;
        for (const auto& [k1, e1] : run(env, xg, budget - 1)) {
          for (auto& [k2, e2] : run(e1, px, budget - 1)) add(out, e2);
        }
      }
    }
  }

  static std::vector<std::string> field_names(const TypeEnv& env, const Path& p) {
    std::set<std::string> names(p.fields.begin(), p.fields.end());
    for (const Binding& b : env.bindings()) {
      if (b.anno.is_alias()) names.insert(b.anno.target.fields.begin(), b.anno.target.fields.end());
    }
    return {names.begin(), names.end()};
  }

  const latte::ClassTable& table_;
  std::map<std::string, std::map<std::string, TypeEnv>> memo_;
};

}  // namespace

std::map<std::string, TypeEnv> all_isolations(const latte::ClassTable& table, const TypeEnv& env, const Path& p) {
  return Search(table).run(env, p, 16);
}

bool precedes(const latte::ClassTable& table, const TypeEnv& env, const LocalAnno& a1, const LocalAnno& a2) {
  using K = LocalAnno::Kind;
  if (a1 == a2 || a1.kind == K::Bottom) return true;
  if (a1.kind == K::Shared && a2.kind == K::Unique) return true;
  if (a1.kind == K::Alias && a2.kind == K::Alias) {
    EquivClosure c(env, {a1.target, a2.target},
                   needed_depth(env, std::max(a1.target.fields.size(), a2.target.fields.size())));
    return c.equiv(a1.target, a2.target);
  }
  if (a1.kind == K::Shared && a2.kind == K::Alias && !a2.target.fields.empty()) {
    return shared_in_place(table, env, a2.target);
  }
  return false;
}

}  // namespace oracle
