#include "mrjc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrjc/dynamics.hpp"
#include "mrjc/format.hpp"
#include "mrjc/hamiltonian.hpp"
#include "mrjc/model.hpp"
#include "mrjc/observables.hpp"
#include "mrjc/truncation.hpp"
#include "mrjc/waveguide.hpp"

namespace mrjc {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

// Everything derived from one parameter point: basis, spectrum, trajectory
// observables and peak structure. Sweeps build one of these per grid value.
struct Analysis {
  int n_max = 0;
  ChainBasis<double> basis;
  MatrixX<double> hamiltonian;
  Spectrum<double> modes;
  StateVector<double> psi0;
  ObservableSeries<double> series;
  VectorX<double> overlaps;
  double ladder_deviation = 0;
  PeakAnalysis<double> peaks;
};

Analysis analyze(const ModelParams<double>& params, const RunConfig& cfg) {
  Analysis a;
  a.n_max = cfg.n_max ? *cfg.n_max
                      : converge_truncation(params, cfg.seed, cfg.t_max,
                                            cfg.convergence_tol,
                                            cfg.samples_per_period, cfg.n_max_limit);
  a.basis = build_chain_basis(params, cfg.seed, a.n_max);
  a.hamiltonian = assemble_chain_hamiltonian(params, a.basis);
  a.modes = spectrum(a.hamiltonian);
  a.psi0 = unit_state(a.basis, a.basis.initial_index);
  const VectorX<double> times =
      sample_times(cfg.t_max, params.omega1, cfg.samples_per_period);
  const Trajectory<double> traj = propagate_eigen(a.modes, a.psi0, times);
  a.series = observable_series(traj, a.psi0);
  a.overlaps = eigenstate_overlaps(a.modes, a.psi0.amplitudes);
  a.ladder_deviation =
      ladder_spacing_deviation(a.modes.values, a.overlaps, params.omega1);
  a.peaks = revival_peaks(a.series, cfg.peak_threshold);
  return a;
}

std::string render_series_csv(const ObservableSeries<double>& s) {
  std::string text = "t,P1,P2,P3,revival,n_mean,k_mean\n";
  for (Index j = 0; j < s.samples(); ++j) {
    text += format_significant(s.times[j]);
    text += ',';
    text += format_significant(s.P1[j]);
    text += ',';
    text += format_significant(s.P2[j]);
    text += ',';
    text += format_significant(s.P3[j]);
    text += ',';
    text += format_significant(s.revival[j]);
    text += ',';
    text += format_significant(s.n_mean[j]);
    text += ',';
    text += format_significant(s.k_mean[j]);
    text += '\n';
  }
  return text;
}

std::vector<double> to_std(const VectorX<double>& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

ordered_json model_json(const ModelParams<double>& p) {
  ordered_json doc;
  doc["E1"] = p.E1;
  doc["E2"] = p.E2;
  doc["E3"] = p.E3;
  doc["omega1"] = p.omega1;
  doc["omega2"] = p.omega2;
  doc["g1"] = p.g1;
  doc["g2eff"] = p.g2eff;
  doc["kappa"] = p.kappa;
  return doc;
}

ordered_json spectrum_json(const Analysis& a) {
  ordered_json doc;
  doc["n_max"] = a.n_max;
  doc["basis_size"] = static_cast<int>(a.basis.states.size());
  doc["eigenvalues"] = to_std(a.modes.values);
  doc["overlaps"] = to_std(a.overlaps);
  doc["ladder_spacing_deviation"] = a.ladder_deviation;
  return doc;
}

ordered_json layout_json(const WaveguideLayout<double>& layout) {
  ordered_json doc;
  doc["spacings"] = layout.spacings;
  doc["side_links"] = ordered_json::array();
  for (const auto& link : layout.cross_links) {
    ordered_json entry;
    entry["site"] = static_cast<int>(link.site);
    entry["spacing"] = link.spacing;
    doc["side_links"].push_back(entry);
  }
  doc["bend_radius"] = layout.bend_radius;
  doc["chi"] = layout.chi;
  doc["alpha"] = layout.alpha;
  doc["n_s"] = layout.n_s;
  doc["a"] = layout.a;
  doc["lambda"] = layout.lambda;
  doc["site_offsets"] = layout.site_offsets;
  doc["metadata"] = {{"couplings", "units of omega1"},
                     {"spacings", "units of 1/alpha"},
                     {"bend_radius", "units of a"},
                     {"site_offsets",
                      "required propagation-constant offsets, units of omega1"}};
  return doc;
}

struct SweepRow {
  double value = 0;
  double max_revival = std::numeric_limits<double>::quiet_NaN();
  double first_peak_t = std::numeric_limits<double>::quiet_NaN();
  double ladder_deviation = std::numeric_limits<double>::quiet_NaN();
  int n_max = -1;
  std::string error;
};

SweepRow sweep_point(const RunConfig& cfg, double value) {
  SweepRow row;
  row.value = value;
  try {
    ModelParams<double> params = cfg.params;
    set_swept_parameter(params, cfg.sweep->parameter, value);
    const Analysis a = analyze(params, cfg);
    row.n_max = a.n_max;
    row.ladder_deviation = a.ladder_deviation;
    const PeakAnalysis<double> all = revival_peaks(a.series, 0.0);
    for (const auto& peak : all.peaks)
      if (!(peak.value <= row.max_revival)) row.max_revival = peak.value;
    if (!a.peaks.peaks.empty()) row.first_peak_t = a.peaks.peaks.front().t;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

RunResult run(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  validate_run_config(cfg);
  std::filesystem::create_directories(out_dir);

  RunResult result;
  ordered_json manifest;
  manifest["model"] = model_json(cfg.params);
  manifest["seed"] = {{"level", cfg.seed.level}, {"n", cfg.seed.n}, {"k", cfg.seed.k}};
  manifest["n_max"] = cfg.n_max ? ordered_json(*cfg.n_max) : ordered_json("auto");
  manifest["t_max"] = cfg.t_max;
  manifest["samples_per_period"] = cfg.samples_per_period;
  manifest["peak_threshold"] = cfg.peak_threshold;
  manifest["convergence_tol"] = cfg.convergence_tol;
  manifest["n_max_limit"] = cfg.n_max_limit;
  manifest["outputs"] = cfg.outputs;
  manifest["units"] = {{"time", "1/omega1 (expected revival period 2*pi)"},
                       {"energy", "omega1"}};

  if (cfg.sweep) {
    manifest["sweep"] = {{"parameter", cfg.sweep->parameter},
                         {"values", cfg.sweep->values}};
    std::string csv = "value,max_revival,first_peak_t,ladder_deviation\n";
    ordered_json resolved = ordered_json::array();
    ordered_json errors = ordered_json::array();
    for (double value : cfg.sweep->values) {
      const SweepRow row = sweep_point(cfg, value);
      csv += format_significant(row.value);
      csv += ',';
      csv += format_significant(row.max_revival);
      csv += ',';
      csv += format_significant(row.first_peak_t);
      csv += ',';
      csv += format_significant(row.ladder_deviation);
      csv += '\n';
      resolved.push_back(row.n_max);
      if (!row.error.empty()) {
        std::cerr << "sweep " << cfg.sweep->parameter << "=" << row.value << ": "
                  << row.error << "\n";
        errors.push_back({{"value", row.value}, {"message", row.error}});
      }
    }
    manifest["sweep"]["n_max_resolved"] = resolved;
    if (!errors.empty()) manifest["sweep"]["errors"] = errors;
    write_file(out_dir / "sweep.csv", csv);
    result.files.push_back("sweep.csv");
  } else {
    const bool wants_series = std::count(cfg.outputs.begin(), cfg.outputs.end(), "series");
    const bool wants_spectrum =
        std::count(cfg.outputs.begin(), cfg.outputs.end(), "spectrum");
    const bool wants_layout = std::count(cfg.outputs.begin(), cfg.outputs.end(), "layout");
    if (wants_series || wants_spectrum || wants_layout || !cfg.n_max) {
      const Analysis a = analyze(cfg.params, cfg);
      result.n_max = a.n_max;
      manifest["n_max_resolved"] = a.n_max;
      manifest["basis_size"] = static_cast<int>(a.basis.states.size());
      if (wants_series) {
        write_file(out_dir / "series.csv", render_series_csv(a.series));
        result.files.push_back("series.csv");
      }
      if (wants_spectrum) {
        write_json(out_dir / "spectrum.json", spectrum_json(a));
        result.files.push_back("spectrum.json");
      }
      if (wants_layout) {
        try {
          const WaveguideLayout<double> layout =
              export_layout(a.basis.params, a.basis, cfg.waveguide->law,
                            cfg.waveguide->optics);
          write_json(out_dir / "layout.json", layout_json(layout));
          result.files.push_back("layout.json");
        } catch (const std::invalid_argument& e) {
          throw config_error(std::string("config: waveguide: ") + e.what());
        }
      }
    } else {
      result.n_max = *cfg.n_max;
      manifest["n_max_resolved"] = *cfg.n_max;
    }
  }

  manifest["files"] = result.files;
  write_json(out_dir / "manifest.json", manifest);
  result.files.push_back("manifest.json");
  return result;
}

}  // namespace mrjc
