#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace latte {

struct CaseResult {
  std::string name;  // `accept/stack`
  bool passed = false;
  std::string detail;
};

struct CorpusReport {
  std::vector<CaseResult> cases;

  bool all_passed() const;
  /// One `PASS name` / `FAIL name: detail` line per case, then a summary line.
  std::string str() const;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs every case manifest (`*.json`) found under `dir`/accept, `dir`/reject
/// and `dir`/dynamic, in name order. Throws CorpusError for malformed manifests.
///
/// Manifest keys, paths relative to the manifest:
///   source             program file
///   expect             "accept" | "reject" | "dynamic-violation"
///   rule               rule tag of the first diagnostic (reject, dynamic-violation)
///   line               optional line of that diagnostic
///   golden             optional `check --dump-env` output to match byte for byte
///   scripts            scripts that must run cleanly (accept)
///   violation_script   script that must trip the oracle under --no-check
///   note               why a rejected program has no violating script
CorpusReport run_corpus(const std::string& dir);

}  // namespace latte
