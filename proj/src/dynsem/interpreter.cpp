#include "latte/dynsem/interpreter.hpp"

namespace latte {

Interpreter::Interpreter(const ClassTable& table, InterpreterOptions options)
    : table_(table), options_(options) {}

void Interpreter::step(const std::string& what, int line) {
  if (steps_ >= options_.step_limit) {
    throw RuntimeError(RuntimeError::Kind::StepLimit,
                       "step limit of " + std::to_string(options_.step_limit) + " exceeded");
  }
  ++steps_;
  if (options_.record_trace) {
    trace_.push_back(std::to_string(steps_) + " " + (labels_.empty() ? "<script>" : labels_.back()) + ":" +
                     std::to_string(line) + " " + what);
  }
}

ObjectId Interpreter::deref(const Value& v, const std::string& what) const {
  if (!v) throw RuntimeError(RuntimeError::Kind::NullDereference, "null dereference in '" + what + "'");
  return *v;
}

Value Interpreter::eval_path(const Locals& locals, const Path& p) const {
  auto it = locals.find(p.root);
  if (it == locals.end()) {
    throw RuntimeError(RuntimeError::Kind::Dispatch, "unbound variable '" + p.root + "'");
  }
  Value v = it->second;
  for (const std::string& f : p.fields) {
    const HeapObject& obj = heap_.at(deref(v, p.str()));
    auto fit = obj.fields.find(f);
    if (fit == obj.fields.end()) {
      throw RuntimeError(RuntimeError::Kind::Dispatch, obj.class_name + " object has no field '" + f + "'");
    }
    v = fit->second;
  }
  return v;
}

Value Interpreter::eval(const Locals& locals, const Expr& e) const {
  return e.is_null() ? Value{} : eval_path(locals, *e.path);
}

void Interpreter::check_oracle() {
  if (!options_.oracle) return;
  std::vector<Value> roots;
  for (const Locals* frame : frames_) {
    for (const auto& [name, v] : *frame) roots.push_back(v);
  }
  if (external_roots_) {
    for (const Value& v : external_roots_()) roots.push_back(v);
  }
  if (auto report = check_unique_invariant(table_, heap_, roots, steps_)) throw UniquenessViolation(*report);
}

Value Interpreter::construct(const std::string& class_name, const std::vector<Value>& args) {
  if (!table_.has_class(class_name)) {
    throw RuntimeError(RuntimeError::Kind::Dispatch, "unknown class '" + class_name + "'");
  }
  const auto& fs = table_.fields(class_name);
  if (fs.size() != args.size()) {
    throw RuntimeError(RuntimeError::Kind::Dispatch, "constructor of " + class_name + " expects " +
                                                         std::to_string(fs.size()) + " argument(s)");
  }
  std::map<std::string, Value> fields;
  for (std::size_t i = 0; i < fs.size(); ++i) fields[fs[i].name] = args[i];
  return heap_.alloc(class_name, std::move(fields));
}

void Interpreter::exec(Locals& locals, const Stmt& s) {
  if (auto* b = s.as<stmt::Block>()) {
    for (const Stmt& c : b->body) exec(locals, c);
    return;
  }
  if (auto* d = s.as<stmt::Decl>()) {
    step("decl " + d->var, s.span.line);
    locals[d->var] = std::nullopt;
    return;
  }
  if (auto* a = s.as<stmt::AssignVar>()) {
    step(a->var + " = " + a->value.str(), s.span.line);
    locals[a->var] = eval(locals, a->value);
    return;
  }
  if (auto* a = s.as<stmt::AssignField>()) {
    step(a->var + "." + a->field + " = " + a->value.str(), s.span.line);
    Value v = eval(locals, a->value);
    ObjectId target = deref(eval_path(locals, Path(a->var)), a->var + "." + a->field);
    heap_.at(target).fields[a->field] = v;
    check_oracle();
    return;
  }
  if (auto* n = s.as<stmt::AssignNew>()) {
    step(n->var + " = new " + n->class_name, s.span.line);
    std::vector<Value> args;
    for (const Expr& e : n->args) args.push_back(eval(locals, e));
    locals[n->var] = construct(n->class_name, args);
    check_oracle();
    return;
  }
  if (auto* c = s.as<stmt::AssignCall>()) {
    step(c->var + " = " + c->receiver.str() + "." + c->method + "(...)", s.span.line);
    Value recv = eval_path(locals, c->receiver);
    std::vector<Value> args;
    for (const Expr& e : c->args) args.push_back(eval(locals, e));
    Value result = invoke(recv, c->method, args);
    locals[c->var] = result;
    return;
  }
  if (auto* c = s.as<stmt::CallVoid>()) {
    step(c->receiver.str() + "." + c->method + "(...)", s.span.line);
    Value recv = eval_path(locals, c->receiver);
    std::vector<Value> args;
    for (const Expr& e : c->args) args.push_back(eval(locals, e));
    invoke(recv, c->method, args);
    return;
  }
  if (auto* i = s.as<stmt::If>()) {
    step("if " + i->lhs.str() + " == " + i->rhs.str(), s.span.line);
    bool taken = eval(locals, i->lhs) == eval(locals, i->rhs);
    exec(locals, taken ? *i->then_branch : *i->else_branch);
    return;
  }
  throw RuntimeError(RuntimeError::Kind::Dispatch, "statement was not desugared");
}

Value Interpreter::invoke(const Value& receiver, const std::string& method, const std::vector<Value>& args) {
  ObjectId self = deref(receiver, "call of '" + method + "'");
  const std::string& cls = heap_.at(self).class_name;
  const MethodDecl* m = table_.find_method(cls, method);
  if (!m) throw RuntimeError(RuntimeError::Kind::Dispatch, "class " + cls + " has no method '" + method + "'");
  if (m->params.size() != args.size()) {
    throw RuntimeError(RuntimeError::Kind::Dispatch, "method '" + method + "' expects " +
                                                         std::to_string(m->params.size()) + " argument(s)");
  }

  if (frames_.size() >= options_.max_call_depth) {
    throw RuntimeError(RuntimeError::Kind::CallDepth,
                       "call depth limit of " + std::to_string(options_.max_call_depth) + " exceeded");
  }

  Locals locals;
  locals["this"] = receiver;
  for (std::size_t i = 0; i < args.size(); ++i) locals[m->params[i].name] = args[i];

  frames_.push_back(&locals);
  labels_.push_back(cls + "." + method);
  struct Pop {
    Interpreter* self;
    ~Pop() {
      self->frames_.pop_back();
      self->labels_.pop_back();
    }
  } pop{this};

  for (const Stmt& s : m->body) exec(locals, s);
  return m->ret_expr ? eval(locals, *m->ret_expr) : Value{};
}

Value Interpreter::call(const Value& receiver, const std::string& method, const std::vector<Value>& args) {
  return invoke(receiver, method, args);
}

}  // namespace latte
