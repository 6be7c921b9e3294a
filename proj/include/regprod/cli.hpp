#pragma once

// `regprod compute|constant|verify`. The command logic lives in the library
// so tests can drive it in-process; tools/regprod_main.cpp is a thin shell.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "regprod/oracles.hpp"

namespace regprod::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kBadArguments = 2,
  kSpecFileError = 3,
  kRouteInapplicable = 4,
  kComputationFailed = 5,
};

struct RouteEntry {
  std::string route;
  std::string value;        // exactly `digits` significant digits
  std::string error_bound;  // scientific, rounded up
  long terms_used = 0;
};

struct ResultDocument {
  std::string sequence;
  int digits = 0;
  std::vector<RouteEntry> routes;
  std::string max_disagreement;
  bool pass = false;
  std::string version;
};

ResultDocument make_document(const std::string& sequence, int digits, const std::vector<RouteValue>& routes,
                             const BigReal& max_disagreement, bool pass);

/// Canonical JSON: sorted keys, two-space indent, every number-like value a string
/// except `digits` and `terms_used`. Parsing and re-dumping reproduces it byte for byte.
nlohmann::json to_json(const ResultDocument& doc);
std::string render_json(const ResultDocument& doc);
std::string render_text(const ResultDocument& doc);

/// exp(-zeta'(0)) for the positive integers via the Euler-Maclaurin route.
RouteValue integers_product(const PrecisionBudget& budget);

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regprod::cli
