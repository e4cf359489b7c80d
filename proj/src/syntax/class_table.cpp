#include "latte/syntax/class_table.hpp"

#include <set>

#include "latte/syntax/parser.hpp"

namespace latte {

ClassTable::ClassTable(Program program) : program_(std::move(program)) {
  for (std::size_t i = 0; i < program_.classes.size(); ++i) {
    const ClassDecl& c = program_.classes[i];
    if (c.name == kObjectClass) throw SyntaxError("class Object is predefined", c.span);
    if (!index_.emplace(c.name, i).second) {
      throw SyntaxError("duplicate class '" + c.name + "'", c.span);
    }
  }
  for (const ClassDecl& c : program_.classes) {
    if (!has_class(c.parent)) {
      throw SyntaxError("class '" + c.name + "' extends unknown class '" + c.parent + "'", c.span);
    }
    std::set<std::string> seen{c.name};
    for (std::string p = c.parent; p != kObjectClass; p = parent(p)) {
      if (!seen.insert(p).second) {
        throw SyntaxError("inheritance cycle through class '" + c.name + "'", c.span);
      }
    }
  }

  fields_[kObjectClass] = {};
  // Parents are processed before children by walking each chain from the top.
  for (const ClassDecl& c : program_.classes) {
    std::vector<const ClassDecl*> chain;
    for (const ClassDecl* d = &c; d != nullptr; d = find(d->parent)) chain.push_back(d);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const ClassDecl* d = *it;
      if (fields_.count(d->name)) continue;
      std::vector<FieldInfo> fs = fields_.at(d->parent);
      for (const FieldDecl& f : d->fields) {
        for (const FieldInfo& g : fs) {
          if (g.name == f.name) {
            throw SyntaxError("duplicate field '" + f.name + "' in class '" + d->name + "'", f.span);
          }
        }
        if (!has_class(f.class_name)) {
          throw SyntaxError("unknown class '" + f.class_name + "' for field '" + f.name + "'", f.span);
        }
        fs.push_back({f.anno, f.class_name, f.name});
      }
      fields_[d->name] = std::move(fs);
    }
  }

  for (const ClassDecl& c : program_.classes) {
    std::set<std::string> names;
    for (const MethodDecl& m : c.methods) {
      if (!names.insert(m.name).second) {
        throw SyntaxError("duplicate method '" + m.name + "' in class '" + c.name + "'", m.span);
      }
      if (m.receiver_class != c.name) {
        throw SyntaxError("receiver of '" + c.name + "." + m.name + "' must have class '" + c.name + "'",
                          m.span);
      }
      if (m.ret && !has_class(m.ret->class_name)) {
        throw SyntaxError("unknown return class '" + m.ret->class_name + "'", m.span);
      }
      std::set<std::string> params{"this"};
      for (const Param& p : m.params) {
        if (!params.insert(p.name).second) {
          throw SyntaxError("duplicate parameter '" + p.name + "' in '" + m.name + "'", m.span);
        }
        if (!has_class(p.class_name)) {
          throw SyntaxError("unknown class '" + p.class_name + "' for parameter '" + p.name + "'", m.span);
        }
      }
    }
    if (c.ctor) {
      for (const Param& p : c.ctor->params) {
        if (!has_class(p.class_name)) {
          throw SyntaxError("unknown class '" + p.class_name + "' in constructor of '" + c.name + "'",
                            c.ctor->span);
        }
      }
    }
  }
}

ClassTable ClassTable::from_source(std::string_view source) {
  return ClassTable(parse_program(source));
}

bool ClassTable::has_class(const std::string& name) const {
  return name == kObjectClass || index_.count(name) != 0;
}

const ClassDecl* ClassTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &program_.classes[it->second];
}

std::string ClassTable::parent(const std::string& name) const {
  const ClassDecl* c = find(name);
  return c ? c->parent : std::string();
}

const std::vector<FieldInfo>& ClassTable::fields(const std::string& cls) const {
  auto it = fields_.find(cls);
  if (it == fields_.end()) throw LookupError("unknown class '" + cls + "'");
  return it->second;
}

std::optional<FieldInfo> ClassTable::ftype(const std::string& cls, const std::string& field) const {
  auto it = fields_.find(cls);
  if (it == fields_.end()) return std::nullopt;
  for (const FieldInfo& f : it->second) {
    if (f.name == field) return f;
  }
  return std::nullopt;
}

const MethodDecl* ClassTable::find_method(const std::string& cls, const std::string& method) const {
  for (const ClassDecl* c = find(cls); c != nullptr; c = find(c->parent)) {
    for (const MethodDecl& m : c->methods) {
      if (m.name == method) return &m;
    }
  }
  return nullptr;
}

std::optional<MethodSig> ClassTable::mtype(const std::string& cls, const std::string& method) const {
  const MethodDecl* m = find_method(cls, method);
  if (!m) return std::nullopt;
  return MethodSig{m->receiver_class, m->receiver_anno, m->params, m->ret};
}

bool ClassTable::subtype(const std::string& sub, const std::string& super) const {
  if (sub == super) return true;
  for (std::string c = sub; !c.empty(); c = parent(c)) {
    if (c == super) return true;
  }
  return false;
}

std::vector<std::string> ClassTable::class_names() const {
  std::vector<std::string> out{kObjectClass};
  for (const ClassDecl& c : program_.classes) out.push_back(c.name);
  return out;
}

}  // namespace latte
