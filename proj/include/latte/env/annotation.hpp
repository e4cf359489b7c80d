#pragma once

#include <string>

#include "latte/syntax/ast.hpp"
#include "latte/syntax/path.hpp"

namespace latte {

/// Annotation of a local variable in the typing environment.
struct LocalAnno {
  enum class Kind { Unique, Shared, Owned, Alias, Bottom };

  Kind kind = Kind::Bottom;
  Path target;  // meaningful for Alias only

  static LocalAnno unique() { return {Kind::Unique, {}}; }
  static LocalAnno shared() { return {Kind::Shared, {}}; }
  static LocalAnno owned() { return {Kind::Owned, {}}; }
  static LocalAnno bottom() { return {Kind::Bottom, {}}; }
  static LocalAnno alias(Path p) { return {Kind::Alias, std::move(p)}; }
  static LocalAnno from_decl(DeclAnno a);

  bool is_alias() const { return kind == Kind::Alias; }
  bool is_bottom() const { return kind == Kind::Bottom; }

  /// `unique`, `alias(this.root)`, `⊥`, ...
  std::string str() const;

  friend bool operator==(const LocalAnno& a, const LocalAnno& b) {
    return a.kind == b.kind && (a.kind != Kind::Alias || a.target == b.target);
  }
};

/// Usage requested of an expression. UniqueInto is `unique(p.f)`: the value
/// is moved into the field path `target`.
struct UsageAnno {
  enum class Kind { Owned, Shared, Unique, UniqueInto };

  Kind kind = Kind::Owned;
  Path target;

  static UsageAnno owned() { return {Kind::Owned, {}}; }
  static UsageAnno shared() { return {Kind::Shared, {}}; }
  static UsageAnno unique() { return {Kind::Unique, {}}; }
  static UsageAnno unique_into(Path p) { return {Kind::UniqueInto, std::move(p)}; }
  static UsageAnno from_decl(DeclAnno a);

  std::string str() const;
};

}  // namespace latte
