#pragma once

#include <string>
#include <vector>

#include "latte/env/relations.hpp"
#include "latte/typing/diagnostic.hpp"

namespace latte {

/// Checks one method body and records an environment snapshot after every
/// statement, in checking order (branches are visited then-first).
class MethodChecker {
 public:
  MethodChecker(const ClassTable& table, std::string method_label)
      : table_(table), label_(std::move(method_label)) {}

  /// Δ ⊢ s ⊣ Δ′. Throws TypeError with the statement's span filled in.
  TypeEnv check(const TypeEnv& env, const Stmt& s);
  TypeEnv check_all(TypeEnv env, const std::vector<Stmt>& body);

  void record(int line, Rule rule, const TypeEnv& env);
  const std::vector<DumpRecord>& dump() const { return dump_; }

 private:
  TypeEnv check_node(const TypeEnv& env, const Stmt& s);

  const ClassTable& table_;
  std::string label_;
  std::vector<DumpRecord> dump_;
};

struct MethodResult {
  std::vector<DumpRecord> dump;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

struct CheckResult {
  std::vector<Diagnostic> diagnostics;
  std::vector<DumpRecord> dump;
  bool ok() const { return diagnostics.empty(); }
};

/// Δ on method entry: `this` and the parameters at their declared annotations.
TypeEnv entry_env(const MethodDecl& m);

/// T-Method / T-VoidMethod, including the override check.
MethodResult check_method(const ClassTable& table, const ClassDecl& cls, const MethodDecl& m);

/// Constructor shape of T-Class.
std::vector<Diagnostic> check_constructor(const ClassTable& table, const ClassDecl& cls);

/// Every class and method; an error only stops the method it occurs in.
CheckResult check_program(const ClassTable& table);

/// Each ≡-class contains at most one variable that is neither an alias nor
/// ⊥, and alias chains end in such a variable (or an unbound root).
bool env_invariant_holds(const TypeEnv& env);

}  // namespace latte
