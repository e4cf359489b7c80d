#include "latte/corpus/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "latte/cli/driver.hpp"

namespace latte {

namespace fs = std::filesystem;

bool CorpusReport::all_passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

std::string CorpusReport::str() const {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const CaseResult& c : cases) {
    if (c.passed) {
      ++passed;
      os << "PASS " << c.name << "\n";
    } else {
      os << "FAIL " << c.name << ": " << c.detail << "\n";
    }
  }
  os << passed << "/" << cases.size() << " cases passed\n";
  return os.str();
}

namespace {

std::string get_string(const nlohmann::json& j, const char* key, const fs::path& manifest) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw CorpusError(manifest.string() + ": missing string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

struct Run {
  int code;
  std::string out;
};

Run check(const fs::path& src, CheckFlags flags) {
  std::ostringstream out, err;
  int code = check_file(src.string(), flags, out, err);
  return {code, out.str() + err.str()};
}

Run run(const fs::path& src, const fs::path& script, bool no_check) {
  RunFlags flags;
  flags.script = script.string();
  flags.no_check = no_check;
  flags.json = true;
  std::ostringstream out, err;
  int code = run_file(src.string(), flags, out, err);
  return {code, out.str() + err.str()};
}

// Checks the first diagnostic against the manifest's rule (and line).
std::string check_rejection(const fs::path& src, const nlohmann::json& m, const fs::path& manifest) {
  const std::string rule = get_string(m, "rule", manifest);
  CheckFlags flags;
  flags.json = true;
  Run r = check(src, flags);
  if (r.code != kExitTypeErrors) return "expected exit 1, got " + std::to_string(r.code);
  auto diags = nlohmann::json::parse(r.out);
  if (diags.empty()) return "no diagnostics";
  const auto& first = diags[0];
  if (first["rule"] != rule) return "expected rule " + rule + ", got " + first["rule"].get<std::string>();
  if (m.contains("line") && first["line"] != m["line"]) {
    return "expected line " + std::to_string(m["line"].get<int>()) + ", got " +
           std::to_string(first["line"].get<int>());
  }
  return {};
}

CaseResult run_case(const fs::path& manifest, const std::string& name) {
  auto text = read_file(manifest.string());
  if (!text) throw CorpusError("cannot read " + manifest.string());
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(*text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(manifest.string() + ": " + e.what());
  }
  const fs::path base = manifest.parent_path();
  const fs::path src = base / get_string(m, "source", manifest);
  const std::string expect = get_string(m, "expect", manifest);

  CaseResult result{name, false, {}};
  auto failed = [&](std::string why) {
    result.detail = std::move(why);
    return result;
  };

  if (expect == "accept") {
    Run r = check(src, {});
    if (r.code != kExitOk) return failed("expected exit 0, got " + std::to_string(r.code) + "\n" + r.out);
    if (m.contains("golden")) {
      CheckFlags flags;
      flags.dump_env = true;
      Run d = check(src, flags);
      auto golden = read_file((base / get_string(m, "golden", manifest)).string());
      if (!golden) return failed("cannot read golden file");
      if (d.out != *golden) return failed("dump differs from golden file");
    }
    if (m.contains("scripts")) {
      for (const auto& s : m["scripts"]) {
        Run r2 = run(src, base / s.get<std::string>(), false);
        if (r2.code != kExitOk) {
          return failed("script " + s.get<std::string>() + " exited " + std::to_string(r2.code) + "\n" + r2.out);
        }
      }
    }
  } else if (expect == "reject" || expect == "dynamic-violation") {
    if (std::string why = check_rejection(src, m, manifest); !why.empty()) return failed(why);
    if (m.contains("violation_script")) {
      Run r = run(src, base / get_string(m, "violation_script", manifest), true);
      if (r.code != kExitViolation) return failed("violation script exited " + std::to_string(r.code));
    } else if (expect == "dynamic-violation") {
      return failed("dynamic-violation case without violation_script");
    } else if (!m.contains("note")) {
      return failed("reject case needs a violation_script or a note");
    }
  } else {
    throw CorpusError(manifest.string() + ": unknown expectation '" + expect + "'");
  }
  result.passed = true;
  return result;
}

}  // namespace

CorpusReport run_corpus(const std::string& dir) {
  CorpusReport report;
  for (const char* sub : {"accept", "reject", "dynamic"}) {
    fs::path d = fs::path(dir) / sub;
    if (!fs::is_directory(d)) continue;
    std::vector<fs::path> manifests;
    for (const auto& entry : fs::directory_iterator(d)) {
      if (entry.path().extension() == ".json") manifests.push_back(entry.path());
    }
    std::sort(manifests.begin(), manifests.end());
    for (const fs::path& m : manifests) {
      report.cases.push_back(run_case(m, std::string(sub) + "/" + m.stem().string()));
    }
  }
  return report;
}

}  // namespace latte
