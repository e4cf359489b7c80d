#include "latte/corpus/generators.hpp"

#include <algorithm>
#include <sstream>

namespace latte {

namespace {

const char* const kFieldNames[] = {"f", "g", "h"};
const char* const kVarNames[] = {"a", "b", "c", "d", "e", "k"};

std::string class_name(int i) { return std::string(1, static_cast<char>('A' + i)); }

const char* anno_word(int i) { return i == 0 ? "unique" : "shared"; }

// Picks a random annotated class layout: ClassDecl text per class.
std::string classes_source(std::mt19937_64& rng, int nclasses, int max_fields) {
  std::ostringstream os;
  for (int c = 0; c < nclasses; ++c) {
    int nf = pick(rng, max_fields + 1);
    std::vector<std::string> decls, params, inits;
    for (int i = 0; i < nf; ++i) {
      std::string decl = std::string(anno_word(pick(rng, 2))) + " " + class_name(pick(rng, nclasses)) + " " +
                         kFieldNames[i];
      decls.push_back(decl);
      params.push_back(decl);
      inits.push_back(std::string("this.") + kFieldNames[i] + " = " + kFieldNames[i] + ";");
    }
    os << "class " << class_name(c) << " extends Object {\n";
    for (const auto& d : decls) os << "  " << d << ";\n";
    os << "  " << class_name(c) << "(";
    for (std::size_t i = 0; i < params.size(); ++i) os << (i ? ", " : "") << params[i];
    os << ") {";
    for (const auto& i : inits) os << " " << i;
    os << " }\n}\n";
  }
  return os.str();
}

}  // namespace

std::string gen_random_classes(std::mt19937_64& rng, const EnvBounds& bounds) {
  int nclasses = 1 + pick(rng, bounds.max_classes);
  return classes_source(rng, nclasses, bounds.max_fields);
}

RandomEnv gen_random_env(std::uint64_t seed, const EnvBounds& bounds) {
  std::mt19937_64 rng(seed);
  std::string source = gen_random_classes(rng, bounds);
  ClassTable table = ClassTable::from_source(source);
  std::vector<std::string> classes;
  for (const auto& c : table.program().classes) classes.push_back(c.name);

  const int nvars = pick(rng, bounds.max_vars + 1);
  std::vector<Binding> created;
  for (int i = 0; i < nvars; ++i) {
    Binding b;
    b.var = kVarNames[i];
    if (!created.empty() && pick(rng, 5) < 2) {
      const Binding& root = created[static_cast<std::size_t>(pick(rng, static_cast<int>(created.size())))];
      Path target(root.var);
      std::string cls = root.class_name;
      int depth = pick(rng, bounds.max_target_depth + 1);
      for (int d = 0; d < depth; ++d) {
        const auto& fs = table.fields(cls);
        if (fs.empty()) break;
        const FieldInfo& f = fs[static_cast<std::size_t>(pick(rng, static_cast<int>(fs.size())))];
        target = target.field(f.name);
        cls = f.class_name;
      }
      b.anno = LocalAnno::alias(target);
      b.class_name = cls;
    } else {
      static const LocalAnno kinds[] = {LocalAnno::unique(), LocalAnno::shared(), LocalAnno::owned(),
                                        LocalAnno::bottom()};
      b.anno = kinds[pick(rng, 4)];
      b.class_name = classes[static_cast<std::size_t>(pick(rng, static_cast<int>(classes.size())))];
    }
    created.push_back(std::move(b));
  }
  // Fisher-Yates with the portable picker.
  for (int i = static_cast<int>(created.size()) - 1; i > 0; --i) {
    std::swap(created[static_cast<std::size_t>(i)], created[static_cast<std::size_t>(pick(rng, i + 1))]);
  }
  return RandomEnv{std::move(source), std::move(table), TypeEnv(std::move(created))};
}

namespace {

struct Var {
  std::string name;
  std::string cls;
};

class ProgramGen {
 public:
  ProgramGen(std::uint64_t seed, const ProgramBounds& b) : rng_(seed), b_(b) {}

  std::string run() {
    nclasses_ = 1 + pick(rng_, b_.max_classes);
    // Fields first so that methods can refer to any class.
    for (int c = 0; c < nclasses_; ++c) {
      int nf = pick(rng_, b_.max_fields + 1);
      std::vector<FieldInfo> fs;
      for (int i = 0; i < nf; ++i) {
        fs.push_back({pick(rng_, 2) == 0 ? DeclAnno::Unique : DeclAnno::Shared, class_name(pick(rng_, nclasses_)),
                      kFieldNames[i]});
      }
      fields_.push_back(std::move(fs));
    }
    for (int c = 0; c < nclasses_; ++c) {
      int nm = pick(rng_, b_.max_methods + 1);
      std::vector<Sig> sigs;
      for (int m = 0; m < nm; ++m) {
        Sig s;
        s.name = "m" + std::to_string(m);
        s.recv = random_param_anno();
        int np = pick(rng_, b_.max_params + 1);
        for (int p = 0; p < np; ++p) {
          s.params.push_back({random_param_anno(), class_name(pick(rng_, nclasses_)), "p" + std::to_string(p)});
        }
        if (pick(rng_, 2)) s.ret = ReturnType{pick(rng_, 2) ? DeclAnno::Unique : DeclAnno::Shared,
                                              class_name(pick(rng_, nclasses_))};
        sigs.push_back(std::move(s));
      }
      sigs_.push_back(std::move(sigs));
    }

    std::ostringstream os;
    for (int c = 0; c < nclasses_; ++c) emit_class(os, c);
    return os.str();
  }

 private:
  struct Sig {
    std::string name;
    DeclAnno recv = DeclAnno::Owned;
    std::vector<Param> params;
    std::optional<ReturnType> ret;
  };

  DeclAnno random_param_anno() {
    static const DeclAnno kAll[] = {DeclAnno::Unique, DeclAnno::Shared, DeclAnno::Owned};
    return kAll[pick(rng_, 3)];
  }

  int class_index(const std::string& name) const { return name[0] - 'A'; }

  void emit_class(std::ostringstream& os, int c) {
    const std::string name = class_name(c);
    os << "class " << name << (pick(rng_, 2) ? " extends Object" : "") << " {\n";
    for (const FieldInfo& f : fields_[static_cast<std::size_t>(c)]) {
      os << "  " << to_string(f.anno) << " " << f.class_name << " " << f.name << ";\n";
    }
    os << "  " << name << "(";
    const auto& fs = fields_[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < fs.size(); ++i) {
      os << (i ? ", " : "") << to_string(fs[i].anno) << " " << fs[i].class_name << " " << fs[i].name;
    }
    os << ") {";
    if (pick(rng_, 2)) os << " super();";
    for (const FieldInfo& f : fs) os << " this." << f.name << " = " << f.name << ";";
    os << " }\n";
    for (const Sig& s : sigs_[static_cast<std::size_t>(c)]) emit_method(os, c, s);
    os << "}\n";
  }

  void emit_method(std::ostringstream& os, int c, const Sig& s) {
    os << "  " << (s.ret ? std::string(to_string(s.ret->anno)) + " " + s.ret->class_name : "void") << " " << s.name
       << "(" << to_string(s.recv) << " " << class_name(c) << " this";
    vars_.clear();
    vars_.push_back({"this", class_name(c)});
    for (const Param& p : s.params) {
      os << ", " << to_string(p.anno) << " " << p.class_name << " " << p.name;
      vars_.push_back({p.name, p.class_name});
    }
    os << ") {\n";
    fresh_ = 0;
    int n = pick(rng_, b_.max_stmts + 1);
    for (int i = 0; i < n; ++i) emit_stmt(os, 4, b_.max_nesting);
    if (s.ret) os << "    return " << expr_of_class(s.ret->class_name) << ";\n";
    os << "  }\n";
  }

  // A path whose class is known, built by a short walk from a variable.
  std::pair<std::string, std::string> random_path(int max_depth) {
    const Var& v = vars_[static_cast<std::size_t>(pick(rng_, static_cast<int>(vars_.size())))];
    std::string text = v.name;
    std::string cls = v.cls;
    int depth = pick(rng_, max_depth + 1);
    for (int i = 0; i < depth; ++i) {
      const auto& fs = fields_[static_cast<std::size_t>(class_index(cls))];
      if (fs.empty()) break;
      const FieldInfo& f = fs[static_cast<std::size_t>(pick(rng_, static_cast<int>(fs.size())))];
      text += "." + f.name;
      cls = f.class_name;
    }
    return {text, cls};
  }

  std::string expr_of_class(const std::string& cls) {
    for (int tries = 0; tries < 4; ++tries) {
      auto [text, c] = random_path(2);
      if (c == cls) return text;
    }
    return "null";
  }

  std::string any_expr() { return pick(rng_, 4) == 0 ? "null" : random_path(2).first; }

  std::string args_for(const std::vector<std::string>& classes) {
    std::string out;
    for (std::size_t i = 0; i < classes.size(); ++i) out += (i ? ", " : "") + expr_of_class(classes[i]);
    return out;
  }

  std::string cond() {
    static const char* kOps[] = {" == ", " != "};
    std::string atom = any_expr() + kOps[pick(rng_, 2)] + any_expr();
    switch (pick(rng_, 4)) {
      case 0:
        return atom + " || " + any_expr() + " == " + any_expr();
      case 1:
        return atom + " && " + any_expr() + " != " + any_expr();
      default:
        return atom;
    }
  }

  void emit_block(std::ostringstream& os, int indent, int nesting) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    os << "{\n";
    auto saved = vars_;
    int n = pick(rng_, 3);
    for (int i = 0; i < n; ++i) emit_stmt(os, indent + 2, nesting);
    vars_ = saved;
    os << pad << "}";
  }

  void emit_stmt(std::ostringstream& os, int indent, int nesting) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    switch (pick(rng_, nesting > 0 ? 8 : 7)) {
      case 0:
      case 1: {  // declaration, possibly initialized
        std::string cls = class_name(pick(rng_, nclasses_));
        std::string name = "v" + std::to_string(fresh_++);
        if (pick(rng_, 2)) {
          os << pad << cls << " " << name << " = " << expr_of_class(cls) << ";\n";
        } else {
          os << pad << cls << " " << name << ";\n";
        }
        vars_.push_back({name, cls});
        return;
      }
      case 2: {  // variable assignment
        const Var& v = vars_[static_cast<std::size_t>(pick(rng_, static_cast<int>(vars_.size())))];
        if (v.name == "this") return;
        os << pad << v.name << " = " << expr_of_class(v.cls) << ";\n";
        return;
      }
      case 3: {  // field assignment
        const Var& v = vars_[static_cast<std::size_t>(pick(rng_, static_cast<int>(vars_.size())))];
        const auto& fs = fields_[static_cast<std::size_t>(class_index(v.cls))];
        if (fs.empty()) return;
        const FieldInfo& f = fs[static_cast<std::size_t>(pick(rng_, static_cast<int>(fs.size())))];
        os << pad << v.name << "." << f.name << " = " << expr_of_class(f.class_name) << ";\n";
        return;
      }
      case 4: {  // allocation
        const Var& v = vars_[static_cast<std::size_t>(pick(rng_, static_cast<int>(vars_.size())))];
        if (v.name == "this") return;
        std::vector<std::string> classes;
        for (const FieldInfo& f : fields_[static_cast<std::size_t>(class_index(v.cls))]) {
          classes.push_back(f.class_name);
        }
        os << pad << v.name << " = new " << v.cls << "(" << args_for(classes) << ");\n";
        return;
      }
      case 5:
      case 6: {  // call
        auto [recv, cls] = random_path(1);
        const auto& sigs = sigs_[static_cast<std::size_t>(class_index(cls))];
        if (sigs.empty()) return;
        const Sig& s = sigs[static_cast<std::size_t>(pick(rng_, static_cast<int>(sigs.size())))];
        std::vector<std::string> classes;
        for (const Param& p : s.params) classes.push_back(p.class_name);
        std::string call = (recv == "this" && pick(rng_, 2) ? std::string() : recv + ".") + s.name + "(" +
                           args_for(classes) + ")";
        if (s.ret) {
          std::vector<const Var*> targets;
          for (const Var& v : vars_) {
            if (v.name != "this" && v.cls == s.ret->class_name) targets.push_back(&v);
          }
          if (!targets.empty()) {
            os << pad << targets[static_cast<std::size_t>(pick(rng_, static_cast<int>(targets.size())))]->name
               << " = " << call << ";\n";
            return;
          }
        }
        os << pad << call << ";\n";
        return;
      }
      default: {  // conditional
        os << pad << "if (" << cond() << ") ";
        emit_block(os, indent, nesting - 1);
        if (pick(rng_, 3)) {
          os << " else ";
          emit_block(os, indent, nesting - 1);
        }
        os << "\n";
        return;
      }
    }
  }

  std::mt19937_64 rng_;
  ProgramBounds b_;
  int nclasses_ = 0;
  std::vector<std::vector<FieldInfo>> fields_;
  std::vector<std::vector<Sig>> sigs_;
  std::vector<Var> vars_;
  int fresh_ = 0;
};

}  // namespace

std::string gen_random_program(std::uint64_t seed, const ProgramBounds& bounds) {
  return ProgramGen(seed, bounds).run();
}

}  // namespace latte
