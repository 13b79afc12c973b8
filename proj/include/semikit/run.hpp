#pragma once

#include "semikit/config.hpp"

#include <string>
#include <vector>

namespace semikit {

inline constexpr const char* kVersion = "0.1.0";

enum ExitStatus : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitContractViolation = 2,
};

/// Runs one validated configuration, writing its artifacts and summary.json
/// into cfg.output_dir. Returns the process exit status.
int run(const RunConfig& cfg);

/// `semikit <command> --config path.json [--key=value ...]`. Always leaves a
/// summary.json behind, including on configuration errors.
int cli_main(const std::vector<std::string>& args);

}  // namespace semikit
