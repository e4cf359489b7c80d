#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latte/dynsem/interpreter.hpp"

namespace latte {

/// One harness operation. For calls, args[0] is the receiver handle.
struct ScriptStep {
  enum class Op { New, Call };
  Op op = Op::New;
  std::string class_name;
  std::string method;
  std::vector<std::optional<std::string>> args;  // nullopt: null
  std::optional<std::string> save;
};

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `[{"op":"new","class":"Stack","args":[null],"save":"s"}, ...]`.
std::vector<ScriptStep> parse_script(const std::string& json_text);

struct RunOutcome {
  enum class Status { Ok, Violation, RuntimeError };
  Status status = Status::Ok;
  std::optional<ViolationReport> violation;
  std::string error;
  std::size_t steps = 0;
  /// One line per script operation, e.g. `call s.pop() -> #3`.
  std::vector<std::string> log;
  std::vector<std::string> trace;
};

/// Executes the script, checking the uniqueness invariant after every field
/// write and allocation. Handles follow the annotations of the parameters
/// they are passed to: a handle given away as unique is consumed, one passed
/// as shared stays usable only as shared, and owned requires a unique handle.
RunOutcome run_script(const ClassTable& table, const std::vector<ScriptStep>& script,
                      InterpreterOptions options = {});

}  // namespace latte
