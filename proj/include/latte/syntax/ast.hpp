#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latte/syntax/path.hpp"

namespace latte {

struct SourceSpan {
  int line = 0;
  int column = 0;
  int end_column = 0;
};

/// Owning, deep-copying pointer for recursive AST nodes.
template <class T>
class Box {
 public:
  Box() = default;
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  explicit operator bool() const { return static_cast<bool>(ptr_); }
  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

/// Declared annotations. Fields and return types only ever carry Unique or
/// Shared; Owned is valid on parameters (including the receiver) only.
enum class DeclAnno { Unique, Shared, Owned };

const char* to_string(DeclAnno a);

struct Stmt;

namespace stmt {

struct Decl {
  std::string class_name;
  std::string var;
};
struct AssignVar {
  std::string var;
  Expr value;
};
struct AssignField {
  std::string var;
  std::string field;
  Expr value;
};
struct AssignNew {
  std::string var;
  std::string class_name;
  std::vector<Expr> args;
};
struct AssignCall {
  std::string var;
  Path receiver;
  std::string method;
  std::vector<Expr> args;
};
struct CallVoid {
  Path receiver;
  std::string method;
  std::vector<Expr> args;
};
struct If {
  Expr lhs;
  Expr rhs;
  Box<Stmt> then_branch;
  Box<Stmt> else_branch;
};
struct Block {
  std::vector<Stmt> body;
};

// Surface sugar, removed by desugar().
struct DeclInit {
  std::string class_name;
  std::string var;
  Box<Stmt> init;  // an assignment to `var`
};
struct Cond {
  enum class Kind { Eq, Ne, Or, And } kind = Kind::Eq;
  Expr lhs;
  Expr rhs;
  Box<Cond> left;
  Box<Cond> right;
};
struct SugarIf {
  Cond cond;
  Box<Stmt> then_branch;
  Box<Stmt> else_branch;  // empty when the source had no else
};

}  // namespace stmt

struct Stmt {
  using Node = std::variant<stmt::Decl, stmt::AssignVar, stmt::AssignField, stmt::AssignNew,
                            stmt::AssignCall, stmt::CallVoid, stmt::If, stmt::Block,
                            stmt::DeclInit, stmt::SugarIf>;
  Node node;
  SourceSpan span;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  bool is_core() const;
};

struct Param {
  DeclAnno anno = DeclAnno::Shared;
  std::string class_name;
  std::string name;
};

struct FieldDecl {
  DeclAnno anno = DeclAnno::Shared;
  std::string class_name;
  std::string name;
  SourceSpan span;
};

struct ReturnType {
  DeclAnno anno = DeclAnno::Unique;
  std::string class_name;
  friend bool operator==(const ReturnType&, const ReturnType&) = default;
};

struct CtorDecl {
  std::string name;
  std::vector<Param> params;
  std::optional<std::vector<std::string>> super_args;  // nullopt: no super(...) call written
  std::vector<std::pair<std::string, std::string>> inits;  // this.<first> = <second>;
  SourceSpan span;
};

struct MethodDecl {
  std::string name;
  DeclAnno receiver_anno = DeclAnno::Owned;
  std::string receiver_class;
  std::vector<Param> params;
  std::optional<ReturnType> ret;  // nullopt: void
  std::vector<Stmt> body;
  std::optional<Expr> ret_expr;
  SourceSpan span;
  SourceSpan ret_span;
};

struct ClassDecl {
  std::string name;
  std::string parent = "Object";
  std::vector<FieldDecl> fields;
  std::optional<CtorDecl> ctor;
  std::vector<MethodDecl> methods;
  SourceSpan span;
};

struct Program {
  std::vector<ClassDecl> classes;
};

}  // namespace latte
