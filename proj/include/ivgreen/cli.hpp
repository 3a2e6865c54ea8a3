#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ivgreen/degenerate.hpp"
#include "ivgreen/interval_system.hpp"

namespace ivgreen::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kVerificationFail = 3 };

/// One invocation. Unset optionals take the documented defaults, and the
/// resolved values are echoed under "config" in every report.
struct RunConfig {
  std::string command;  // cap, green, hm, asym-sweep, cheb-check, verify
  std::string system_file;
  std::string out;      // empty: stdout
  std::string format = "json";
  std::uint64_t seed = 1;
  std::vector<cplx> probes;
  std::vector<double> centers;
  std::optional<int> refinements;  // asym-sweep, default 7
  std::optional<double> eps0;      // asym-sweep, default from the schedule rule
  std::string placement = "centered";
  std::optional<int> degree;       // cheb-check, default 8
  std::vector<int> nus;            // cheb-check, default 1 per center
  std::optional<double> x0;        // green, hm, verify: finite pole
  std::optional<int> band;         // hm: single band to report
  int nodes = 128;                 // verify: equilibrium panels per band
  long paths = 100000;             // verify: walks per start point
};

struct RunResult {
  int exit_code = kOk;
  std::string report;   // full report text (JSON or CSV)
  std::string message;  // diagnostic for stderr, empty on success
};

/// Executes a parsed configuration. Never throws; errors map to exit codes.
RunResult run(const RunConfig& cfg);

/// Parses argv (CLI11), runs, writes the report and returns the exit code.
int main(int argc, char** argv);

}  // namespace ivgreen::cli
