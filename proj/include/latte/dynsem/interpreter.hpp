#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "latte/dynsem/heap.hpp"

namespace latte {

class RuntimeError : public std::runtime_error {
 public:
  enum class Kind { NullDereference, StepLimit, CallDepth, Dispatch, Harness };
  RuntimeError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Thrown by the interpreter when the oracle is enabled and the uniqueness
/// invariant breaks; the first violation ends the run.
class UniquenessViolation : public std::runtime_error {
 public:
  explicit UniquenessViolation(ViolationReport r)
      : std::runtime_error("uniqueness violation"), report_(std::move(r)) {}
  const ViolationReport& report() const { return report_; }

 private:
  ViolationReport report_;
};

struct InterpreterOptions {
  std::size_t step_limit = 100000;
  /// Nested method calls allowed before the run is stopped; keeps runaway
  /// recursion from exhausting the native stack.
  std::size_t max_call_depth = 2000;
  bool oracle = true;
  bool record_trace = false;
};

/// Big-step interpreter with Java reference semantics: assignments copy
/// references, nothing is destroyed on read. Each executed statement other
/// than a block counts as one step.
class Interpreter {
 public:
  Interpreter(const ClassTable& table, InterpreterOptions options = {});

  /// Extra oracle roots held outside any frame (the script's handles).
  void set_external_roots(std::function<std::vector<Value>()> roots) { external_roots_ = std::move(roots); }

  Value construct(const std::string& class_name, const std::vector<Value>& args);
  Value call(const Value& receiver, const std::string& method, const std::vector<Value>& args);

  const Heap& heap() const { return heap_; }
  Heap& heap() { return heap_; }
  std::size_t steps() const { return steps_; }
  const std::vector<std::string>& trace() const { return trace_; }

  /// Runs the oracle now; throws UniquenessViolation.
  void check_oracle();
  /// Counts one step taken outside method bodies (a script operation).
  void step(const std::string& what, int line = 0);

 private:
  using Locals = std::map<std::string, Value>;

  Value eval(const Locals& locals, const Expr& e) const;
  Value eval_path(const Locals& locals, const Path& p) const;
  ObjectId deref(const Value& v, const std::string& what) const;
  void exec(Locals& locals, const Stmt& s);
  Value invoke(const Value& receiver, const std::string& method, const std::vector<Value>& args);

  const ClassTable& table_;
  InterpreterOptions options_;
  Heap heap_;
  std::size_t steps_ = 0;
  std::vector<Locals*> frames_;
  std::vector<std::string> labels_;
  std::vector<std::string> trace_;
  std::function<std::vector<Value>()> external_roots_;
};

}  // namespace latte
