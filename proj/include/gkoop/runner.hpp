// Command dispatch shared by the CLI and the test suites: runs one check
// (verify | rescale | lift-check | residual) or the whole catalog suite and
// renders a JSON report plus a per-sample CSV dump.
#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gkoop/config.hpp"

namespace gkoop {

struct RunResult {
  bool pass = false;
  nlohmann::json report;
  std::string csv;
};

// CLI flag values that take precedence over what the config file says.
struct Overrides {
  std::optional<double> tol, collin_tol, zero_tol, fd_step, rk4_step, horizon;
  std::optional<std::uint64_t> seed;

  void apply(SystemDefinition& def, RunConfig& run) const;
};

RunResult run_command(const std::string& command, const BuiltSystem& sys,
                      const RunConfig& cfg);

// Runs every catalog entry's checks against its expectations.
RunResult run_suite(const Overrides& overrides);

void write_report_files(const RunResult& result, const RunConfig& cfg);

}  // namespace gkoop
