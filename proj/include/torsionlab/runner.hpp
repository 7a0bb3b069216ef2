#pragma once

#include "torsionlab/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace torsionlab {

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> artifacts;  // paths written
  std::string message;
};

// Dispatch a parsed experiment to its subcommand (torsion, linking, witness,
// rotset, action, chain, thm1-demo, thm2-demo), writing CSV/SVG artifacts.
// Exit codes: 0 success, 1 usage, 2 numeric failure, 3 search-not-found.
RunResult run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace torsionlab
