#pragma once

#include <string>
#include <vector>

namespace ggmtree_cli {

struct SuiteResult {
  std::string name;
  bool pass;
  bool skipped;
  std::string detail;
};

struct VerifyOptions {
  int k = 2;
  bool full = false;
  /// Deliberately corrupt one checked quantity; the run must then fail.
  bool inject_fault = false;
};

/// Run the verification suites. Returns one result per suite.
std::vector<SuiteResult> run_verify(const VerifyOptions& opt);

}  // namespace ggmtree_cli
