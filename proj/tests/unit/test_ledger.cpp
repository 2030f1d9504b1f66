#include "doctest.h"

#include <algorithm>
#include <string>

#include "ep2d/ledger.hpp"

using namespace ep2d;

namespace {

bool mentions(const LedgerReport& r, const std::string& what) {
  return std::any_of(r.problems.begin(), r.problems.end(),
                     [&](const std::string& p) { return p.find(what) != std::string::npos; });
}

const std::vector<std::string> kTests{"alpha", "beta"};

}  // namespace

TEST_CASE("shipped ledger passes") {
  const LedgerReport r = ledger_check(EP2D_SOURCE_DIR "/configs/ledger.toml", EP2D_SOURCE_DIR);
  for (const auto& p : r.problems) MESSAGE(p);
  CHECK(r.pass);
  CHECK(r.entries == 151);
  CHECK(r.implemented + r.out_of_scope == r.entries);
  CHECK(r.implemented > 0);
}

TEST_CASE("test names are scanned from the sources") {
  const auto names = scan_test_names(EP2D_SOURCE_DIR);
  CHECK(std::find(names.begin(), names.end(), "shipped ledger passes") != names.end());
  CHECK(std::find(names.begin(), names.end(), "z norm gaussian oracle") != names.end());
}

TEST_CASE("small ledger passes") {
  const std::string text = R"(expected_entries = 2
[[entry]]
id = "one"
statement = "first"
status = "implemented"
operation = "model.conserved_energy"
tests = ["alpha", "check:conservation"]

[[entry]]
id = "two"
statement = "second"
status = "out_of_scope"
reason = "not a computational statement"
)";
  const LedgerReport r = ledger_check_text(text, kTests);
  CHECK(r.pass);
  CHECK(r.implemented == 1);
  CHECK(r.out_of_scope == 1);
}

TEST_CASE("removed operation fails by name") {
  const std::string text = R"(expected_entries = 1
[[entry]]
id = "gone"
statement = "uses something deleted"
status = "implemented"
operation = "model.no_such_op"
tests = ["alpha"]
)";
  const LedgerReport r = ledger_check_text(text, kTests);
  CHECK_FALSE(r.pass);
  CHECK(mentions(r, "gone"));
  CHECK(mentions(r, "model.no_such_op"));
}

TEST_CASE("missing test and unknown check fail") {
  const std::string text = R"(expected_entries = 1
[[entry]]
id = "e"
statement = "s"
status = "implemented"
operation = "model.conserved_energy"
tests = ["gamma", "check:nope"]
)";
  const LedgerReport r = ledger_check_text(text, kTests);
  CHECK_FALSE(r.pass);
  CHECK(mentions(r, "gamma"));
  CHECK(mentions(r, "check:nope"));
}

TEST_CASE("out of scope needs a reason") {
  const std::string text = R"(expected_entries = 1
[[entry]]
id = "bare"
statement = "s"
status = "out_of_scope"
)";
  const LedgerReport r = ledger_check_text(text, kTests);
  CHECK_FALSE(r.pass);
  CHECK(mentions(r, "bare"));
}

TEST_CASE("duplicate ids and wrong count fail") {
  const std::string text = R"(expected_entries = 3
[[entry]]
id = "d"
statement = "s"
status = "out_of_scope"
reason = "r"

[[entry]]
id = "d"
statement = "s"
status = "out_of_scope"
reason = "r"
)";
  const LedgerReport r = ledger_check_text(text, kTests);
  CHECK_FALSE(r.pass);
  CHECK(mentions(r, "d"));
  CHECK(r.problems.size() >= 2);
}

TEST_CASE("bad status fails") {
  const std::string text = R"(expected_entries = 1
[[entry]]
id = "x"
statement = "s"
status = "maybe"
)";
  CHECK_FALSE(ledger_check_text(text, kTests).pass);
}
