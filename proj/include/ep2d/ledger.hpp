#pragma once

#include <string>
#include <vector>

namespace ep2d {

// "module.op" names a ledger entry may point at.
const std::vector<std::string>& operation_catalog();

struct LedgerReport {
  bool pass = false;
  int entries = 0;
  int implemented = 0;
  int out_of_scope = 0;
  std::vector<std::string> problems;  // one line each, names the entry
};

// Test references are doctest case names found under tests/unit and
// tests/acceptance, or check:<name> for the verify registry.
LedgerReport ledger_check(const std::string& ledger_path, const std::string& source_dir);
LedgerReport ledger_check_text(const std::string& toml_text, const std::vector<std::string>& test_names);

std::vector<std::string> scan_test_names(const std::string& source_dir);

}  // namespace ep2d
