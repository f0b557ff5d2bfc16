#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrjc/run_config.hpp"
#include "mrjc/runner.hpp"
#include "mrjc/truncation.hpp"
#include "preset_data.hpp"

namespace {

// --nmax takes an integer cutoff or the literal "auto".
void apply_nmax(mrjc::RunConfig& cfg, const std::string& text) {
  if (text == "auto") {
    cfg.n_max.reset();
    return;
  }
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size() || value < 0) throw std::invalid_argument(text);
    cfg.n_max = value;
  } catch (const std::exception&) {
    throw mrjc::config_error("config: --nmax expects a non-negative integer or 'auto'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed Rabi/Jaynes-Cummings chain simulator"};
  app.footer("exit codes: 0 success, 2 config error, 3 truncation non-convergence");

  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::string nmax_text;
  double tmax = 0;
  int spp = 0;
  std::vector<std::string> emit;

  auto* config_opt =
      app.add_option("--config", config_path, "run configuration (JSON file)")
          ->check(CLI::ExistingFile);
  auto* preset_opt = app.add_option("--preset", preset, "built-in configuration")
                         ->check(CLI::IsMember({"fig3", "fig4"}));
  config_opt->excludes(preset_opt);
  preset_opt->excludes(config_opt);
  app.add_option("--out", out_dir, "output directory (default: current directory)");
  auto* nmax_opt =
      app.add_option("--nmax", nmax_text, "boson-number cutoff (integer or 'auto')");
  auto* tmax_opt =
      app.add_option("--tmax", tmax, "evolution time in units of 1/omega1");
  auto* spp_opt = app.add_option("--spp", spp, "samples per 2*pi/omega1 period");
  auto* emit_opt =
      app.add_option("--emit", emit, "outputs to produce: series,spectrum,layout")
          ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    mrjc::RunConfig cfg;
    if (config_opt->count())
      cfg = mrjc::load_run_config(config_path);
    else if (preset_opt->count())
      cfg = mrjc::load_run_config_text(
          preset == "fig3" ? mrjc::presets::fig3 : mrjc::presets::fig4,
          "preset '" + preset + "'");
    else
      throw mrjc::config_error("config: one of --config or --preset is required");

    if (nmax_opt->count()) apply_nmax(cfg, nmax_text);
    if (tmax_opt->count()) cfg.t_max = tmax;
    if (spp_opt->count()) cfg.samples_per_period = spp;
    if (emit_opt->count()) cfg.outputs = emit;

    const mrjc::RunResult result = mrjc::run(cfg, out_dir);
    if (result.n_max >= 0) std::cout << "n_max " << result.n_max << "\n";
    for (const auto& file : result.files) std::cout << file << "\n";
    return 0;
  } catch (const mrjc::config_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const mrjc::convergence_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
