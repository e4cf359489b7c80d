#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latte/syntax/ast.hpp"

namespace latte {

/// Rule tags carried by diagnostics and dump records. Plumbing covers errors
/// that no typing rule describes (parse errors, unknown names in the class
/// table).
enum class Rule {
  ENull,
  EOwned,
  EShared,
  EUniqueOwned,
  EUniqueShared,
  EUniqueUnique,
  EUniqueAlias,
  EAlias,
  EFieldOwned,
  EFieldShared,
  ESub,
  TVar,
  TField,
  SBlock,
  SDecl,
  SAssignVar,
  SAssignShared,
  SAssignUnique,
  SNew,
  SCall,
  SCallVoid,
  SConditional,
  TMethod,
  TVoidMethod,
  TClass,
  Plumbing,
};

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);

struct Diagnostic {
  enum class Severity { Error, Note };

  Severity severity = Severity::Error;
  Rule rule = Rule::Plumbing;
  std::string message;
  std::string file;
  SourceSpan span;
  std::string method;  // `Class.method`, empty outside method bodies
  std::string expected;
  std::string actual;
};

/// `file:line:col: error: [RULE] message`.
std::string render(const Diagnostic& d, bool color = false);

/// Environment snapshot taken after a statement has been checked. Index 0 is
/// the environment on method entry.
struct DumpRecord {
  std::string method;
  int index = 0;
  int line = 0;
  Rule rule = Rule::Plumbing;
  std::string env;
};

/// `Stack.push #3 (line 8) [S-AssignVar]: this : owned Stack, ...`.
std::string render(const DumpRecord& r);

/// A failed premise. The span may be left empty by helpers that do not know
/// the statement; the statement checker fills it in.
class TypeError : public std::runtime_error {
 public:
  explicit TypeError(Diagnostic d) : std::runtime_error(d.message), diag_(std::move(d)) {}
  TypeError(Rule rule, const std::string& message, std::string expected = {}, std::string actual = {});

  const Diagnostic& diagnostic() const { return diag_; }
  Diagnostic& diagnostic() { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace latte
