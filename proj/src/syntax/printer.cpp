#include "latte/syntax/printer.hpp"

#include <sstream>

namespace latte {

namespace {

std::string join_exprs(const std::vector<Expr>& es) {
  std::string s;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) s += ", ";
    s += es[i].str();
  }
  return s;
}

std::string call_target(const Path& receiver, const std::string& method) {
  return receiver.str() + "." + method;
}

void print_into(std::ostringstream& os, const Stmt& s, int indent);

void print_branch(std::ostringstream& os, const Stmt& s, int indent) {
  if (s.as<stmt::Block>()) {
    print_into(os, s, indent);
  } else {
    os << "\n";
    print_into(os, s, indent + 2);
  }
}

void print_into(std::ostringstream& os, const Stmt& s, int indent) {
  std::string pad(indent, ' ');
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, stmt::Decl>) {
          os << pad << n.class_name << " " << n.var << ";";
        } else if constexpr (std::is_same_v<T, stmt::AssignVar>) {
          os << pad << n.var << " = " << n.value.str() << ";";
        } else if constexpr (std::is_same_v<T, stmt::AssignField>) {
          os << pad << n.var << "." << n.field << " = " << n.value.str() << ";";
        } else if constexpr (std::is_same_v<T, stmt::AssignNew>) {
          os << pad << n.var << " = new " << n.class_name << "(" << join_exprs(n.args) << ");";
        } else if constexpr (std::is_same_v<T, stmt::AssignCall>) {
          os << pad << n.var << " = " << call_target(n.receiver, n.method) << "(" << join_exprs(n.args)
             << ");";
        } else if constexpr (std::is_same_v<T, stmt::CallVoid>) {
          os << pad << call_target(n.receiver, n.method) << "(" << join_exprs(n.args) << ");";
        } else if constexpr (std::is_same_v<T, stmt::If>) {
          os << pad << "if (" << n.lhs.str() << " == " << n.rhs.str() << ") ";
          if (n.then_branch->template as<stmt::Block>()) {
            print_into(os, *n.then_branch, indent);
            os << " else ";
          } else {
            os << "\n";
            print_into(os, *n.then_branch, indent + 2);
            os << "\n" << pad << "else ";
          }
          if (n.else_branch->template as<stmt::Block>()) {
            print_into(os, *n.else_branch, indent);
          } else {
            print_branch(os, *n.else_branch, indent);
          }
        } else if constexpr (std::is_same_v<T, stmt::Block>) {
          // Nested blocks start at the current position; callers supply the pad.
          os << (os.tellp() > 0 && os.str().back() == '\n' ? pad : "") << "{";
          for (const auto& c : n.body) {
            os << "\n";
            print_into(os, c, indent + 2);
          }
          os << "\n" << pad << "}";
        } else {
          os << pad << "/* sugar */";
        }
      },
      s.node);
}

bool same_expr_list(const std::vector<Expr>& a, const std::vector<Expr>& b) { return a == b; }

bool same_stmt(const Stmt& a, const Stmt& b);

bool same_body(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_stmt(a[i], b[i])) return false;
  }
  return true;
}

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = a.as<stmt::Decl>()) {
    auto* y = b.as<stmt::Decl>();
    return x->class_name == y->class_name && x->var == y->var;
  }
  if (auto* x = a.as<stmt::AssignVar>()) {
    auto* y = b.as<stmt::AssignVar>();
    return x->var == y->var && x->value == y->value;
  }
  if (auto* x = a.as<stmt::AssignField>()) {
    auto* y = b.as<stmt::AssignField>();
    return x->var == y->var && x->field == y->field && x->value == y->value;
  }
  if (auto* x = a.as<stmt::AssignNew>()) {
    auto* y = b.as<stmt::AssignNew>();
    return x->var == y->var && x->class_name == y->class_name && same_expr_list(x->args, y->args);
  }
  if (auto* x = a.as<stmt::AssignCall>()) {
    auto* y = b.as<stmt::AssignCall>();
    return x->var == y->var && x->receiver == y->receiver && x->method == y->method &&
           same_expr_list(x->args, y->args);
  }
  if (auto* x = a.as<stmt::CallVoid>()) {
    auto* y = b.as<stmt::CallVoid>();
    return x->receiver == y->receiver && x->method == y->method && same_expr_list(x->args, y->args);
  }
  if (auto* x = a.as<stmt::If>()) {
    auto* y = b.as<stmt::If>();
    return x->lhs == y->lhs && x->rhs == y->rhs && same_stmt(*x->then_branch, *y->then_branch) &&
           same_stmt(*x->else_branch, *y->else_branch);
  }
  if (auto* x = a.as<stmt::Block>()) return same_body(x->body, b.as<stmt::Block>()->body);
  return false;
}

bool same_params(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].anno != b[i].anno || a[i].class_name != b[i].class_name || a[i].name != b[i].name) {
      return false;
    }
  }
  return true;
}

std::string print_params(const std::vector<Param>& ps, bool leading_comma) {
  std::string s;
  for (const auto& p : ps) {
    if (leading_comma || &p != &ps.front()) s += ", ";
    s += std::string(to_string(p.anno)) + " " + p.class_name + " " + p.name;
  }
  return s;
}

}  // namespace

std::string print_stmt(const Stmt& s, int indent) {
  std::ostringstream os;
  print_into(os, s, indent);
  return os.str();
}

std::string print_program(const Program& program) {
  std::ostringstream os;
  for (const ClassDecl& c : program.classes) {
    os << "class " << c.name << " extends " << c.parent << " {\n";
    for (const FieldDecl& f : c.fields) {
      os << "  " << to_string(f.anno) << " " << f.class_name << " " << f.name << ";\n";
    }
    if (c.ctor) {
      const CtorDecl& k = *c.ctor;
      os << "  " << k.name << "(" << print_params(k.params, false) << ") {\n";
      if (k.super_args) {
        os << "    super(";
        for (std::size_t i = 0; i < k.super_args->size(); ++i) {
          os << (i ? ", " : "") << (*k.super_args)[i];
        }
        os << ");\n";
      }
      for (const auto& [field, value] : k.inits) os << "    this." << field << " = " << value << ";\n";
      os << "  }\n";
    }
    for (const MethodDecl& m : c.methods) {
      os << "  ";
      if (m.ret) {
        os << to_string(m.ret->anno) << " " << m.ret->class_name;
      } else {
        os << "void";
      }
      os << " " << m.name << "(" << to_string(m.receiver_anno) << " " << m.receiver_class << " this"
         << print_params(m.params, true) << ") {\n";
      for (const Stmt& s : m.body) os << print_stmt(s, 4) << "\n";
      if (m.ret_expr) os << "    return " << m.ret_expr->str() << ";\n";
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

bool same_program(const Program& a, const Program& b) {
  if (a.classes.size() != b.classes.size()) return false;
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    const ClassDecl& x = a.classes[i];
    const ClassDecl& y = b.classes[i];
    if (x.name != y.name || x.parent != y.parent || x.fields.size() != y.fields.size()) return false;
    for (std::size_t j = 0; j < x.fields.size(); ++j) {
      if (x.fields[j].anno != y.fields[j].anno || x.fields[j].class_name != y.fields[j].class_name ||
          x.fields[j].name != y.fields[j].name) {
        return false;
      }
    }
    if (x.ctor.has_value() != y.ctor.has_value()) return false;
    if (x.ctor && (!same_params(x.ctor->params, y.ctor->params) || x.ctor->super_args != y.ctor->super_args ||
                   x.ctor->inits != y.ctor->inits)) {
      return false;
    }
    if (x.methods.size() != y.methods.size()) return false;
    for (std::size_t j = 0; j < x.methods.size(); ++j) {
      const MethodDecl& m = x.methods[j];
      const MethodDecl& n = y.methods[j];
      if (m.name != n.name || m.receiver_anno != n.receiver_anno || m.receiver_class != n.receiver_class ||
          !same_params(m.params, n.params) || m.ret != n.ret || m.ret_expr != n.ret_expr ||
          !same_body(m.body, n.body)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace latte
