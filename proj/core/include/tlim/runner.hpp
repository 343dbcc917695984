#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tlim/config.hpp"

namespace tlim {

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads_override;
};

struct RunResult {
  int exit_code = 0;                   // 0 ok, 1 checks failed, 3 I/O failure
  std::vector<std::string> failures;   // names of failing checks
  std::vector<std::string> artifacts;  // files written
  std::string summary;                 // human-readable digest
};

// Executes one experiment config: dispatches to the verification suites and
// limit experiments, writes CSV artifacts, and reports failing checks.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace tlim
