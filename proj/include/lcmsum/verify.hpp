#pragma once

// The verification battery behind `lcmsum verify`.

#include "lcmsum/polytope.hpp"

#include <string>
#include <vector>

namespace lcmsum::verify {

enum class Status { Pass, Fail, Error, Resource };

std::string to_string(Status status);  // "pass", "fail", "error", "resource"

struct CheckRow {
  std::string check_name;
  Status status = Status::Error;
  std::string expected;
  std::string actual;
  std::string tolerance;
  double runtime_ms = 0;
};

// "quick" skips every k = 4 volume; "all" runs everything.
std::vector<std::string> suite_names();
std::vector<std::string> check_names(const std::string& suite);

// Rows come back in declaration order whatever the thread count.
// threads = 0 uses LCMSUM_THREADS or the hardware.
std::vector<CheckRow> run_suite(const std::string& suite, unsigned threads = 0);

// 0 all passed, 3 a budget was exceeded, 1 otherwise.
int exit_status(const std::vector<CheckRow>& rows);

// Reference worksheet text for D_star / D_star3 with k = 3, 4.
const std::string& reference_listing(polytope::PolytopeKind kind, int k);

}  // namespace lcmsum::verify
