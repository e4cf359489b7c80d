#include "latte/env/type_env.hpp"

#include <algorithm>
#include <cassert>

namespace latte {

const Binding* TypeEnv::find(const std::string& var) const {
  for (const Binding& b : bindings_) {
    if (b.var == var) return &b;
  }
  return nullptr;
}

std::optional<std::size_t> TypeEnv::index_of(const std::string& var) const {
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (bindings_[i].var == var) return i;
  }
  return std::nullopt;
}

std::optional<LocalAnno> TypeEnv::anno(const std::string& var) const {
  const Binding* b = find(var);
  if (!b) return std::nullopt;
  return b->anno;
}

void TypeEnv::insert_at(std::size_t index, Binding b) {
  index = std::min(index, bindings_.size());
  bindings_.insert(bindings_.begin() + static_cast<std::ptrdiff_t>(index), std::move(b));
}

void TypeEnv::set_anno(const std::string& var, LocalAnno a) {
  for (Binding& b : bindings_) {
    if (b.var == var) {
      b.anno = std::move(a);
      return;
    }
  }
  assert(false && "set_anno on unbound variable");
}

void TypeEnv::erase(const std::string& var) {
  std::erase_if(bindings_, [&](const Binding& b) { return b.var == var; });
}

std::string TypeEnv::str() const {
  if (bindings_.empty()) return "·";
  std::string s;
  for (const Binding& b : bindings_) {
    if (!s.empty()) s += ", ";
    s += b.var + " : " + b.anno.str() + " " + b.class_name;
  }
  return s;
}

}  // namespace latte
