#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latte/env/annotation.hpp"

namespace latte {

struct Binding {
  std::string var;
  LocalAnno anno;
  std::string class_name;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// The environment Δ: bindings in declaration order. A value type; the
/// checker copies it freely.
class TypeEnv {
 public:
  TypeEnv() = default;
  explicit TypeEnv(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {}

  const std::vector<Binding>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  bool contains(const std::string& var) const { return find(var) != nullptr; }
  const Binding* find(const std::string& var) const;
  std::optional<std::size_t> index_of(const std::string& var) const;
  /// Annotation of `var`; nullopt when unbound.
  std::optional<LocalAnno> anno(const std::string& var) const;

  void append(Binding b) { bindings_.push_back(std::move(b)); }
  void insert_at(std::size_t index, Binding b);
  /// Precondition: `var` is bound.
  void set_anno(const std::string& var, LocalAnno a);
  void erase(const std::string& var);

  /// `this : owned Stack, r : alias(this.root) Node`; `·` when empty.
  std::string str() const;

  friend bool operator==(const TypeEnv&, const TypeEnv&) = default;

 private:
  std::vector<Binding> bindings_;
};

}  // namespace latte
