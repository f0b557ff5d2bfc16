#pragma once
// Executes a parsed RunConfig end to end: truncation resolution, propagation,
// observable/spectral analysis, optional waveguide design, and artifact
// emission (CSV + JSON, written atomically).

#include <filesystem>
#include <string>
#include <vector>

#include "mrjc/run_config.hpp"

namespace mrjc {

struct RunResult {
  int n_max = -1;  // resolved cutoff; stays -1 for sweeps (resolved per point)
  std::vector<std::string> files;  // artifact names written into out_dir
};

RunResult run(const RunConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace mrjc
