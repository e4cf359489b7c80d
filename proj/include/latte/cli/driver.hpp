#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "latte/dynsem/script.hpp"
#include "latte/typing/checker.hpp"

namespace latte {

enum ExitCode : int {
  kExitOk = 0,
  kExitTypeErrors = 1,
  kExitParseError = 2,
  kExitIoError = 3,
  kExitViolation = 4,
  kExitRuntimeError = 5,
};

struct CheckFlags {
  bool json = false;
  bool dump_env = false;
  bool color = false;
};

struct RunFlags {
  std::string script;
  bool json = false;
  bool no_check = false;
  std::size_t step_limit = 100000;
};

/// `latte check`. Writes results to `out` and I/O problems to `err`.
int check_file(const std::string& path, const CheckFlags& flags, std::ostream& out, std::ostream& err);

/// `latte run`.
int run_file(const std::string& path, const RunFlags& flags, std::ostream& out, std::ostream& err);

/// Same as check_file for source already in memory; `display_name` is used in
/// diagnostics.
int check_source(const std::string& display_name, const std::string& source, const CheckFlags& flags,
                 std::ostream& out);

nlohmann::json to_json(const Diagnostic& d);
nlohmann::json to_json(const DumpRecord& r);
nlohmann::json to_json(const ViolationReport& r);

/// Reads a whole file; nullopt when it cannot be opened.
std::optional<std::string> read_file(const std::string& path);

/// True when LATTE_COLOR=1.
bool color_from_env();

}  // namespace latte
