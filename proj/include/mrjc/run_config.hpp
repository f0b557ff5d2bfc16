#pragma once
// JSON run configuration: schema, parsing with field-level diagnostics, and
// the error type the CLI maps to exit code 2.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrjc/model.hpp"
#include "mrjc/waveguide.hpp"

namespace mrjc {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  std::string parameter;  // one of E1, E2, E3, omega2, g1, g2eff
  std::vector<double> values;
};

struct WaveguideSpec {
  CouplingLaw<double> law;
  WaveguideOptics<double> optics;
};

struct RunConfig {
  ModelParams<double> params;
  BasisState seed{1, 0, 0};
  std::optional<int> n_max;  // empty = auto (converged truncation)
  double t_max = 0;
  int samples_per_period = 2048;
  double peak_threshold = 0.5;
  double convergence_tol = 1e-8;
  int n_max_limit = 4096;
  std::vector<std::string> outputs;  // subset of {series, spectrum, layout}
  std::optional<SweepSpec> sweep;
  std::optional<WaveguideSpec> waveguide;
};

// Parse a JSON document; throws config_error naming the offending field.
RunConfig parse_run_config(const nlohmann::json& doc);

// Read + parse; JSON syntax errors keep nlohmann's line/column diagnostics.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig load_run_config_text(const std::string& text, const std::string& origin);

// Full validation, run after CLI overrides are applied.
void validate_run_config(const RunConfig& cfg);

// Assign a swept parameter by name, keeping the resonance constraint: E2/E3
// sweeps move omega2, an omega2 sweep moves E3.
void set_swept_parameter(ModelParams<double>& params, const std::string& name,
                         double value);

}  // namespace mrjc
