#include "latte/cli/driver.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "latte/syntax/parser.hpp"

namespace latte {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool color_from_env() {
  const char* v = std::getenv("LATTE_COLOR");
  return v && std::string(v) == "1";
}

nlohmann::json to_json(const Diagnostic& d) {
  nlohmann::json j;
  j["severity"] = d.severity == Diagnostic::Severity::Error ? "error" : "note";
  j["rule"] = rule_name(d.rule);
  j["message"] = d.message;
  j["file"] = d.file;
  j["line"] = d.span.line;
  j["column"] = d.span.column;
  j["end_column"] = d.span.end_column;
  if (!d.method.empty()) j["method"] = d.method;
  if (!d.expected.empty()) j["expected"] = d.expected;
  if (!d.actual.empty()) j["actual"] = d.actual;
  return j;
}

nlohmann::json to_json(const DumpRecord& r) {
  return {{"method", r.method}, {"index", r.index}, {"line", r.line}, {"rule", rule_name(r.rule)}, {"env", r.env}};
}

nlohmann::json to_json(const ViolationReport& r) {
  return {{"object", r.object},
          {"locations",
           nlohmann::json::array({{{"object", r.first.object}, {"field", r.first.field}},
                                  {{"object", r.second.object}, {"field", r.second.field}}})},
          {"step", r.step}};
}

namespace {

struct Loaded {
  std::optional<ClassTable> table;
  std::optional<Diagnostic> parse_error;
};

Loaded load(const std::string& display_name, const std::string& source) {
  Loaded l;
  try {
    l.table.emplace(ClassTable::from_source(source));
  } catch (const SyntaxError& e) {
    Diagnostic d;
    d.rule = Rule::Plumbing;
    d.file = display_name;
    d.span = e.span();
    d.message = e.what();
    l.parse_error = std::move(d);
  }
  return l;
}

void print_diagnostics(const std::vector<Diagnostic>& diags, const std::vector<DumpRecord>* dump,
                       const CheckFlags& flags, std::ostream& out) {
  if (flags.json) {
    nlohmann::json ds = nlohmann::json::array();
    for (const Diagnostic& d : diags) ds.push_back(to_json(d));
    if (dump) {
      nlohmann::json rs = nlohmann::json::array();
      for (const DumpRecord& r : *dump) rs.push_back(to_json(r));
      out << nlohmann::json{{"diagnostics", ds}, {"dump", rs}}.dump(2) << "\n";
    } else {
      out << ds.dump(2) << "\n";
    }
    return;
  }
  if (dump) {
    for (const DumpRecord& r : *dump) out << render(r) << "\n";
  }
  for (const Diagnostic& d : diags) out << render(d, flags.color) << "\n";
}

}  // namespace

int check_source(const std::string& display_name, const std::string& source, const CheckFlags& flags,
                 std::ostream& out) {
  Loaded l = load(display_name, source);
  const std::vector<DumpRecord> no_dump;
  if (l.parse_error) {
    print_diagnostics({*l.parse_error}, flags.dump_env ? &no_dump : nullptr, flags, out);
    return kExitParseError;
  }
  CheckResult r = check_program(*l.table);
  for (Diagnostic& d : r.diagnostics) d.file = display_name;
  print_diagnostics(r.diagnostics, flags.dump_env ? &r.dump : nullptr, flags, out);
  return r.ok() ? kExitOk : kExitTypeErrors;
}

int check_file(const std::string& path, const CheckFlags& flags, std::ostream& out, std::ostream& err) {
  auto source = read_file(path);
  if (!source) {
    err << "latte: cannot read '" << path << "'\n";
    return kExitIoError;
  }
  return check_source(path, *source, flags, out);
}

int run_file(const std::string& path, const RunFlags& flags, std::ostream& out, std::ostream& err) {
  auto source = read_file(path);
  if (!source) {
    err << "latte: cannot read '" << path << "'\n";
    return kExitIoError;
  }
  auto script_text = read_file(flags.script);
  if (!script_text) {
    err << "latte: cannot read script '" << flags.script << "'\n";
    return kExitIoError;
  }
  std::vector<ScriptStep> script;
  try {
    script = parse_script(*script_text);
  } catch (const ScriptError& e) {
    err << "latte: " << flags.script << ": " << e.what() << "\n";
    return kExitIoError;
  }

  CheckFlags cf;
  cf.json = flags.json;
  cf.color = color_from_env();
  Loaded l = load(path, *source);
  if (l.parse_error) {
    print_diagnostics({*l.parse_error}, nullptr, cf, out);
    return kExitParseError;
  }
  if (!flags.no_check) {
    CheckResult r = check_program(*l.table);
    if (!r.ok()) {
      for (Diagnostic& d : r.diagnostics) d.file = path;
      print_diagnostics(r.diagnostics, nullptr, cf, out);
      return kExitTypeErrors;
    }
  }

  InterpreterOptions opts;
  opts.step_limit = flags.step_limit;
  RunOutcome o = run_script(*l.table, script, opts);

  const char* status = o.status == RunOutcome::Status::Ok          ? "ok"
                       : o.status == RunOutcome::Status::Violation ? "violation"
                                                                   : "runtime-error";
  if (flags.json) {
    nlohmann::json j{{"status", status}, {"steps", o.steps}, {"log", o.log}};
    if (o.violation) j["violation"] = to_json(*o.violation);
    if (!o.error.empty()) j["error"] = o.error;
    out << j.dump(2) << "\n";
  } else {
    for (const std::string& line : o.log) out << line << "\n";
    if (o.violation) {
      const ViolationReport& v = *o.violation;
      out << "violation at step " << v.step << ": object #" << v.object << " is stored in #" << v.first.object
          << "." << v.first.field << " and #" << v.second.object << "." << v.second.field << "\n";
    } else if (!o.error.empty()) {
      out << "runtime error after " << o.steps << " steps: " << o.error << "\n";
    } else {
      out << "ok: " << o.steps << " steps, invariant held throughout\n";
    }
  }
  switch (o.status) {
    case RunOutcome::Status::Ok:
      return kExitOk;
    case RunOutcome::Status::Violation:
      return kExitViolation;
    case RunOutcome::Status::RuntimeError:
      return kExitRuntimeError;
  }
  return kExitRuntimeError;
}

}  // namespace latte
