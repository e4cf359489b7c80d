#include "latte/typing/checker.hpp"

#include <cassert>
#include <set>

#include "latte/typing/isolation.hpp"
#include "latte/typing/unify.hpp"
#include "latte/typing/usage.hpp"

namespace latte {

namespace {

[[noreturn]] void fail(Rule rule, const std::string& msg) { throw TypeError(rule, msg); }

const Binding& bound_var(const TypeEnv& env, const std::string& x, Rule rule) {
  const Binding* b = env.find(x);
  if (!b) fail(rule, "unknown variable '" + x + "'");
  return *b;
}

// Re-binds `x` after isolation, at the position it had before.
TypeEnv rebind(const ClassTable& table, const TypeEnv& env, const std::string& x, LocalAnno a,
               const std::string& cls) {
  std::size_t index = *env.index_of(x);
  TypeEnv out = isolate(table, env, Path(x));
  out.insert_at(index, {x, std::move(a), cls});
  return out;
}

struct CallSite {
  const Path& receiver;
  const std::string& method;
  const std::vector<Expr>& args;
};

// Shared premises of S-Call and S-CallVoid: argument typing, separation of
// owned arguments, and the frame. Returns Δ″ and the signature used.
std::pair<TypeEnv, MethodSig> check_call(const ClassTable& table, const TypeEnv& env, const CallSite& call,
                                         Rule rule) {
  std::string recv_class = ref_type_or_throw(table, env, call.receiver);
  auto sig = table.mtype(recv_class, call.method);
  if (!sig) fail(rule, "class " + recv_class + " has no method '" + call.method + "'");
  if (sig->params.size() != call.args.size()) {
    fail(rule, "method '" + call.method + "' expects " + std::to_string(sig->params.size()) + " argument(s), got " +
                   std::to_string(call.args.size()));
  }

  TypeEnv cur = type_expr(table, env, Expr::of(call.receiver), UsageAnno::from_decl(sig->receiver_anno),
                          sig->declaring_class);
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    cur = type_expr(table, cur, call.args[i], UsageAnno::from_decl(sig->params[i].anno), sig->params[i].class_name);
  }

  // The receiver is exempt: borrowing `this` alongside one of its fields is
  // how recursive traversals are written.
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (sig->params[i].anno != DeclAnno::Owned || call.args[i].is_null()) continue;
    for (std::size_t j = i + 1; j < call.args.size(); ++j) {
      if (call.args[j].is_null()) continue;
      if (reach_alias(cur, *call.args[i].path, *call.args[j].path)) {
        fail(rule, "owned argument '" + call.args[i].str() + "' may be aliased with a value reachable from '" +
                       call.args[j].str() + "'");
      }
    }
  }

  std::vector<Expr> framed{Expr::of(call.receiver)};
  framed.insert(framed.end(), call.args.begin(), call.args.end());
  return {frame(table, cur, framed), *sig};
}

Rule stmt_rule(const Stmt& s, const ClassTable& table, const TypeEnv& env) {
  if (s.as<stmt::Decl>()) return Rule::SDecl;
  if (s.as<stmt::AssignVar>()) return Rule::SAssignVar;
  if (auto* a = s.as<stmt::AssignField>()) {
    auto cls = declared_class(table, env, Path(a->var));
    auto info = cls ? table.ftype(*cls, a->field) : std::nullopt;
    return info && info->anno == DeclAnno::Shared ? Rule::SAssignShared : Rule::SAssignUnique;
  }
  if (s.as<stmt::AssignNew>()) return Rule::SNew;
  if (s.as<stmt::AssignCall>()) return Rule::SCall;
  if (s.as<stmt::CallVoid>()) return Rule::SCallVoid;
  if (s.as<stmt::If>()) return Rule::SConditional;
  return Rule::SBlock;
}

}  // namespace

void MethodChecker::record(int line, Rule rule, const TypeEnv& env) {
  dump_.push_back({label_, static_cast<int>(dump_.size()), line, rule, env.str()});
}

TypeEnv MethodChecker::check(const TypeEnv& env, const Stmt& s) {
  try {
    TypeEnv out = check_node(env, s);
    assert(env_invariant_holds(out));
    if (!s.as<stmt::Block>()) record(s.span.line, stmt_rule(s, table_, env), out);
    return out;
  } catch (TypeError& e) {
    if (e.diagnostic().span.line == 0) e.diagnostic().span = s.span;
    throw;
  }
}

TypeEnv MethodChecker::check_all(TypeEnv env, const std::vector<Stmt>& body) {
  for (const Stmt& s : body) env = check(env, s);
  return env;
}

TypeEnv MethodChecker::check_node(const TypeEnv& env, const Stmt& s) {
  const ClassTable& table = table_;

  if (auto* d = s.as<stmt::Decl>()) {  // S-Decl
    if (env.contains(d->var)) fail(Rule::SDecl, "variable '" + d->var + "' is already declared");
    if (!table.has_class(d->class_name)) fail(Rule::SDecl, "unknown class '" + d->class_name + "'");
    TypeEnv out = env;
    out.append({d->var, LocalAnno::bottom(), d->class_name});
    return out;
  }

  if (auto* a = s.as<stmt::AssignVar>()) {  // S-AssignVar
    const Binding& x = bound_var(env, a->var, Rule::SAssignVar);
    std::string cls = x.class_name;
    if (a->value.is_null()) return rebind(table, env, a->var, LocalAnno::unique(), cls);
    const Path& e = *a->value.path;
    std::string e_class = ref_type_or_throw(table, env, e);
    if (!table.subtype(e_class, cls)) {
      throw TypeError(Rule::SAssignVar,
                      "cannot assign '" + e.str() + "' of class " + e_class + " to '" + a->var + "' of class " + cls,
                      cls, e_class);
    }
    if (alias_equiv(env, Path(a->var), e)) fail(Rule::SAssignVar, "'" + a->var + "' already aliases '" + e.str() + "'");
    if (e.root == a->var) {
      fail(Rule::SAssignVar, "'" + e.str() + "' is rooted in the assigned variable '" + a->var +
                                 "'; read it through a separate variable");
    }
    return rebind(table, env, a->var, LocalAnno::alias(e), cls);
  }

  if (auto* a = s.as<stmt::AssignField>()) {  // S-AssignShared / S-AssignUnique
    Path x(a->var);
    std::string cls = ref_type_or_throw(table, env, x);
    auto info = table.ftype(cls, a->field);
    if (!info) fail(Rule::TField, "class '" + cls + "' has no field '" + a->field + "'");
    Path xf = x.field(a->field);
    TypeEnv isolated = isolate(table, env, xf);
    if (info->anno == DeclAnno::Shared) {
      return type_expr(table, isolated, a->value, UsageAnno::shared(), info->class_name);
    }
    if (!a->value.is_null() && reach_alias(isolated, xf, *a->value.path)) {
      fail(Rule::SAssignUnique,
           "'" + a->value.str() + "' may be aliased with a value reachable from '" + xf.str() + "'");
    }
    return type_expr(table, isolated, a->value, UsageAnno::unique_into(xf), info->class_name);
  }

  if (auto* n = s.as<stmt::AssignNew>()) {  // S-New
    if (!table.has_class(n->class_name)) fail(Rule::SNew, "unknown class '" + n->class_name + "'");
    const auto& fs = table.fields(n->class_name);
    if (fs.size() != n->args.size()) {
      fail(Rule::SNew, "constructor of " + n->class_name + " expects " + std::to_string(fs.size()) +
                           " argument(s), got " + std::to_string(n->args.size()));
    }
    TypeEnv cur = env;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      cur = type_expr(table, cur, n->args[i], UsageAnno::from_decl(fs[i].anno), fs[i].class_name);
    }
    const Binding& x = bound_var(cur, n->var, Rule::SNew);
    std::string cls = x.class_name;
    if (!table.subtype(n->class_name, cls)) {
      throw TypeError(Rule::SNew, "cannot assign a new " + n->class_name + " to '" + n->var + "' of class " + cls,
                      cls, n->class_name);
    }
    return rebind(table, cur, n->var, LocalAnno::unique(), cls);
  }

  if (auto* c = s.as<stmt::AssignCall>()) {  // S-Call
    auto [framed, sig] = check_call(table, env, {c->receiver, c->method, c->args}, Rule::SCall);
    if (!sig.ret) fail(Rule::SCall, "method '" + c->method + "' returns void");
    const Binding& x = bound_var(framed, c->var, Rule::SCall);
    std::string cls = x.class_name;
    if (!table.subtype(sig.ret->class_name, cls)) {
      throw TypeError(Rule::SCall,
                      "cannot assign the " + sig.ret->class_name + " result of '" + c->method + "' to '" + c->var +
                          "' of class " + cls,
                      cls, sig.ret->class_name);
    }
    return rebind(table, framed, c->var, LocalAnno::from_decl(sig.ret->anno), cls);
  }

  if (auto* c = s.as<stmt::CallVoid>()) {  // S-CallVoid
    return check_call(table, env, {c->receiver, c->method, c->args}, Rule::SCallVoid).first;
  }

  if (auto* i = s.as<stmt::If>()) {  // S-Conditional
    for (const Expr* e : {&i->lhs, &i->rhs}) {
      if (!e->is_null()) ref_type_or_throw(table, env, *e->path);
    }
    TypeEnv left = check(env, *i->then_branch);
    TypeEnv right = check(env, *i->else_branch);
    return unify(table, env, left, right);
  }

  if (auto* b = s.as<stmt::Block>()) return check_all(env, b->body);  // S-Block

  fail(Rule::Plumbing, "statement was not desugared");
}

TypeEnv entry_env(const MethodDecl& m) {
  TypeEnv env;
  env.append({"this", LocalAnno::from_decl(m.receiver_anno), m.receiver_class});
  for (const Param& p : m.params) env.append({p.name, LocalAnno::from_decl(p.anno), p.class_name});
  return env;
}

namespace {

std::string signature_str(const MethodSig& s) {
  std::string out = std::string(to_string(s.receiver_anno)) + " this";
  for (const Param& p : s.params) out += ", " + std::string(to_string(p.anno)) + " " + p.class_name;
  out += ") -> ";
  out += s.ret ? std::string(to_string(s.ret->anno)) + " " + s.ret->class_name : "void";
  return "(" + out;
}

}  // namespace

MethodResult check_method(const ClassTable& table, const ClassDecl& cls, const MethodDecl& m) {
  MethodResult result;
  const std::string label = cls.name + "." + m.name;
  const Rule method_rule = m.ret ? Rule::TMethod : Rule::TVoidMethod;
  auto report = [&](Diagnostic d) {
    d.method = label;
    result.diagnostics.push_back(std::move(d));
  };

  if (auto parent_sig = table.mtype(cls.parent, m.name)) {
    MethodSig own{cls.name, m.receiver_anno, m.params, m.ret};
    bool same = parent_sig->receiver_anno == own.receiver_anno && parent_sig->ret == own.ret &&
                parent_sig->params.size() == own.params.size();
    for (std::size_t i = 0; same && i < own.params.size(); ++i) {
      same = parent_sig->params[i].anno == own.params[i].anno &&
             parent_sig->params[i].class_name == own.params[i].class_name;
    }
    if (!same) {
      Diagnostic d;
      d.rule = method_rule;
      d.span = m.span;
      d.message = "'" + m.name + "' overrides " + parent_sig->declaring_class + "." + m.name + " with signature " +
                  signature_str(own) + " but the overridden signature is " + signature_str(*parent_sig);
      d.expected = signature_str(*parent_sig);
      d.actual = signature_str(own);
      report(std::move(d));
    }
  }

  MethodChecker checker(table, label);
  TypeEnv env = entry_env(m);
  checker.record(m.span.line, method_rule, env);
  try {
    env = checker.check_all(std::move(env), m.body);
    if (m.ret && m.ret_expr) {
      try {
        type_expr(table, env, *m.ret_expr, UsageAnno::from_decl(m.ret->anno), m.ret->class_name);
      } catch (TypeError& e) {
        if (e.diagnostic().span.line == 0) e.diagnostic().span = m.ret_span;
        throw;
      }
    }
  } catch (const TypeError& e) {
    report(e.diagnostic());
  }
  result.dump = checker.dump();
  return result;
}

std::vector<Diagnostic> check_constructor(const ClassTable& table, const ClassDecl& cls) {
  std::vector<Diagnostic> out;
  auto report = [&](const std::string& msg, SourceSpan span) {
    Diagnostic d;
    d.rule = Rule::TClass;
    d.span = span;
    d.message = msg;
    d.method = cls.name;
    out.push_back(std::move(d));
  };
  if (!cls.ctor) {
    report("class " + cls.name + " has no constructor", cls.span);
    return out;
  }
  const CtorDecl& k = *cls.ctor;
  if (k.name != cls.name) {
    report("constructor '" + k.name + "' does not match class name " + cls.name, k.span);
    return out;
  }

  const auto& inherited = table.fields(cls.parent);
  const auto& all = table.fields(cls.name);
  std::string expected;
  for (const FieldInfo& f : all) {
    if (!expected.empty()) expected += ", ";
    expected += std::string(to_string(f.anno)) + " " + f.class_name + " " + f.name;
  }
  bool params_ok = k.params.size() == all.size();
  for (std::size_t i = 0; params_ok && i < all.size(); ++i) {
    params_ok = k.params[i].anno == all[i].anno && k.params[i].class_name == all[i].class_name &&
                k.params[i].name == all[i].name;
  }
  if (!params_ok) {
    report("constructor of " + cls.name + " must take exactly (" + expected + ")", k.span);
    return out;
  }

  std::vector<std::string> super_expected;
  for (const FieldInfo& f : inherited) super_expected.push_back(f.name);
  const bool super_ok = k.super_args ? *k.super_args == super_expected : inherited.empty();
  if (!super_ok) {
    std::string names;
    for (const auto& n : super_expected) names += (names.empty() ? "" : ", ") + n;
    report("constructor of " + cls.name + " must call super(" + names + ")", k.span);
  }

  bool inits_ok = k.inits.size() == cls.fields.size();
  for (std::size_t i = 0; inits_ok && i < cls.fields.size(); ++i) {
    inits_ok = k.inits[i].first == cls.fields[i].name && k.inits[i].second == cls.fields[i].name;
  }
  if (!inits_ok) {
    report("constructor of " + cls.name + " must assign each declared field from the parameter of the same name, in "
           "declaration order",
           k.span);
  }
  return out;
}

CheckResult check_program(const ClassTable& table) {
  CheckResult result;
  for (const ClassDecl& cls : table.program().classes) {
    for (Diagnostic& d : check_constructor(table, cls)) result.diagnostics.push_back(std::move(d));
    for (const MethodDecl& m : cls.methods) {
      MethodResult r = check_method(table, cls, m);
      for (Diagnostic& d : r.diagnostics) result.diagnostics.push_back(std::move(d));
      for (DumpRecord& rec : r.dump) result.dump.push_back(std::move(rec));
    }
  }
  return result;
}

bool env_invariant_holds(const TypeEnv& env) {
  std::set<std::string> names;
  for (const Binding& b : env.bindings()) {
    if (!names.insert(b.var).second) return false;
    std::set<std::string> seen{b.var};
    const Binding* cur = &b;
    while (cur && cur->anno.is_alias()) {
      const std::string& next = cur->anno.target.root;
      if (!seen.insert(next).second) return false;
      cur = env.find(next);
    }
  }
  return true;
}

}  // namespace latte
