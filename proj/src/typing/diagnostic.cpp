#include "latte/typing/diagnostic.hpp"

#include <array>
#include <utility>

namespace latte {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 26> kRuleNames{{
    {Rule::ENull, "E-Null"},
    {Rule::EOwned, "E-Owned"},
    {Rule::EShared, "E-Shared"},
    {Rule::EUniqueOwned, "E-UniqueOwned"},
    {Rule::EUniqueShared, "E-UniqueShared"},
    {Rule::EUniqueUnique, "E-UniqueUnique"},
    {Rule::EUniqueAlias, "E-UniqueAlias"},
    {Rule::EAlias, "E-Alias"},
    {Rule::EFieldOwned, "E-FieldOwned"},
    {Rule::EFieldShared, "E-FieldShared"},
    {Rule::ESub, "E-Sub"},
    {Rule::TVar, "T-Var"},
    {Rule::TField, "T-Field"},
    {Rule::SBlock, "S-Block"},
    {Rule::SDecl, "S-Decl"},
    {Rule::SAssignVar, "S-AssignVar"},
    {Rule::SAssignShared, "S-AssignShared"},
    {Rule::SAssignUnique, "S-AssignUnique"},
    {Rule::SNew, "S-New"},
    {Rule::SCall, "S-Call"},
    {Rule::SCallVoid, "S-CallVoid"},
    {Rule::SConditional, "S-Conditional"},
    {Rule::TMethod, "T-Method"},
    {Rule::TVoidMethod, "T-VoidMethod"},
    {Rule::TClass, "T-Class"},
    {Rule::Plumbing, "plumbing"},
}};

}  // namespace

const char* rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "plumbing";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (name == n) return rule;
  }
  return std::nullopt;
}

std::string render(const Diagnostic& d, bool color) {
  const char* sev = d.severity == Diagnostic::Severity::Error ? "error" : "note";
  std::string s = d.file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
  if (color) {
    s += d.severity == Diagnostic::Severity::Error ? "\x1b[1;31m" : "\x1b[1;36m";
    s += sev;
    s += "\x1b[0m";
  } else {
    s += sev;
  }
  s += ": [";
  s += rule_name(d.rule);
  s += "] " + d.message;
  if (!d.method.empty()) s += " (in " + d.method + ")";
  return s;
}

std::string render(const DumpRecord& r) {
  return r.method + " #" + std::to_string(r.index) + " (line " + std::to_string(r.line) + ") [" +
         rule_name(r.rule) + "]: " + r.env;
}

TypeError::TypeError(Rule rule, const std::string& message, std::string expected, std::string actual)
    : std::runtime_error(message) {
  diag_.rule = rule;
  diag_.message = message;
  diag_.expected = std::move(expected);
  diag_.actual = std::move(actual);
}

}  // namespace latte
