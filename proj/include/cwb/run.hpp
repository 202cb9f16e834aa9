#pragma once

#include <string>

namespace cwb {

struct RunResult {
  std::string report;  // JSON RunReport, or an error object on failure
  int exit_code = 0;   // 0 ok, 2 validation error, 3 cap/numerical failure
};

// The whole command surface: parses argv (without the program name), executes
// one subcommand, and returns the report. Deterministic: re-running the same
// config byte-reproduces every field except wall_time_ms.
RunResult run(int argc, const char* const* argv);

const char* tool_version();
const char* format_version();

}  // namespace cwb
