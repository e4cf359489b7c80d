#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "latte/syntax/ast.hpp"

namespace latte {

inline constexpr const char* kObjectClass = "Object";

struct FieldInfo {
  DeclAnno anno = DeclAnno::Shared;
  std::string class_name;
  std::string name;
  friend bool operator==(const FieldInfo&, const FieldInfo&) = default;
};

/// Method signature as seen from a call site. The receiver occupies its own
/// slot ahead of the explicit parameters.
struct MethodSig {
  std::string declaring_class;
  DeclAnno receiver_anno = DeclAnno::Owned;
  std::vector<Param> params;
  std::optional<ReturnType> ret;
};

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable table of the classes of a program plus the implicit root class
/// Object. Construction validates the structural invariants (resolvable and
/// acyclic inheritance, duplicate-free fields, known type names) and throws
/// SyntaxError otherwise.
class ClassTable {
 public:
  explicit ClassTable(Program program);

  /// parse_program + ClassTable construction.
  static ClassTable from_source(std::string_view source);

  const Program& program() const { return program_; }
  bool has_class(const std::string& name) const;
  /// nullptr for Object and unknown names.
  const ClassDecl* find(const std::string& name) const;
  /// Parent class; empty for Object.
  std::string parent(const std::string& name) const;

  /// Inherited fields first, then declared ones. Throws LookupError.
  const std::vector<FieldInfo>& fields(const std::string& cls) const;
  std::optional<FieldInfo> ftype(const std::string& cls, const std::string& field) const;
  /// Nearest declaration of `method` in `cls` or an ancestor.
  std::optional<MethodSig> mtype(const std::string& cls, const std::string& method) const;
  const MethodDecl* find_method(const std::string& cls, const std::string& method) const;

  bool subtype(const std::string& sub, const std::string& super) const;

  std::vector<std::string> class_names() const;

 private:
  Program program_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<FieldInfo>> fields_;
};

}  // namespace latte
