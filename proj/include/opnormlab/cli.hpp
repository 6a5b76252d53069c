#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace opnormlab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Bad flag combination detected after parsing; mapped to exit code 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;  // gap|interp|diamond|theorem1|cocycle|sdp-selftest|all
  std::uint64_t seed = 1;
  std::string out;              // report path; empty writes to stdout
  std::string format = "json";  // json|csv

  // gap
  std::size_t nmax = 6;
  std::size_t d = 1;

  // interp
  std::size_t dim_left = 3;
  std::size_t dim_right = 3;
  std::size_t pair_count = 3;
  std::size_t count = 20;  // batch size (interp and theorem1)
  std::size_t restarts = 64;

  // diamond
  std::string map = "transpose";  // transpose|identity|random
  std::size_t dim = 2;

  // theorem1
  std::string input;  // optional TensorElement JSON path

  // cocycle
  std::string algebra = "truncpoly";
  std::size_t degree = 4;
};

struct CheckTally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
};

struct Report {
  nlohmann::json body;  // schema: docs/report.schema.json
  CheckTally checks;
  std::string csv;  // CSV rendering of the payload table, if the command has one
};

/// Dispatch one command. Throws UsageError on bad config combinations and
/// lets NumericalError escape for run_and_write to convert.
Report run(const RunConfig& config);

/// Atomic write (temp file + rename) of the report in the configured format;
/// empty out path prints to stdout.
void write_output(const Report& report, const RunConfig& config);

/// run + write with the documented exit codes: 0 all checks passed,
/// 1 failures or numerical breakdown (diagnostic report still written).
int run_and_write(const RunConfig& config);

}  // namespace opnormlab::cli
