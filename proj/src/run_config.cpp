#include "mrjc/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

namespace mrjc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const char* key, const std::string& label) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail("missing required field '" + label + "'");
  return *it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known)
      fail("unknown key '" + (path.empty() ? item.key() : path + "." + item.key()) + "'");
  }
}

double as_number(const json& v, const std::string& label) {
  if (!v.is_number()) fail("field '" + label + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail("field '" + label + "' must be finite");
  return x;
}

int as_int(const json& v, const std::string& label) {
  if (!v.is_number_integer()) fail("field '" + label + "' must be an integer");
  return v.get<int>();
}

bool is_known_sweep_parameter(const std::string& name) {
  return name == "E1" || name == "E2" || name == "E3" || name == "omega2" ||
         name == "g1" || name == "g2eff";
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) fail("top-level document must be a JSON object");
  reject_unknown(doc, "",
                 {"params", "seed", "n_max", "t_max", "t_max_periods",
                  "samples_per_period", "peak_threshold", "convergence_tol",
                  "n_max_limit", "outputs", "sweep", "waveguide"});
  RunConfig cfg;

  const json& pj = require(doc, "params", "params");
  if (!pj.is_object()) fail("'params' must be an object");
  reject_unknown(pj, "params", {"E1", "E2", "E3", "omega2", "g1", "g2eff", "kappa"});
  const double E1 = as_number(require(pj, "E1", "params.E1"), "params.E1");
  const double E2 = as_number(require(pj, "E2", "params.E2"), "params.E2");
  const double g1 = as_number(require(pj, "g1", "params.g1"), "params.g1");
  const double g2eff = as_number(require(pj, "g2eff", "params.g2eff"), "params.g2eff");
  int kappa = 0;
  if (const json* v = find(pj, "kappa")) kappa = as_int(*v, "params.kappa");
  const json* e3 = find(pj, "E3");
  const json* w2 = find(pj, "omega2");
  try {
    if (e3 && w2)
      cfg.params = ModelParamsd::checked(E1, E2, as_number(*e3, "params.E3"),
                                         as_number(*w2, "params.omega2"), g1,
                                         g2eff, kappa);
    else if (e3)
      cfg.params =
          ModelParamsd::from_levels(E1, E2, as_number(*e3, "params.E3"), g1, g2eff, kappa);
    else if (w2)
      cfg.params = ModelParamsd::resonant(E1, E2, as_number(*w2, "params.omega2"),
                                          g1, g2eff, kappa);
    else
      fail("params: one of 'E3' or 'omega2' is required");
  } catch (const std::invalid_argument& e) {
    fail(std::string("params: ") + e.what());
  }

  cfg.seed = {1, 0, chain_k(1, cfg.params.kappa)};
  if (const json* sj = find(doc, "seed")) {
    if (!sj->is_object()) fail("'seed' must be an object");
    reject_unknown(*sj, "seed", {"level", "n", "k"});
    cfg.seed.level = as_int(require(*sj, "level", "seed.level"), "seed.level");
    cfg.seed.n = as_int(require(*sj, "n", "seed.n"), "seed.n");
    if (const json* v = find(*sj, "k"))
      cfg.seed.k = as_int(*v, "seed.k");
    else
      cfg.seed.k = chain_k(cfg.seed.level, cfg.params.kappa);
  }

  if (const json* v = find(doc, "n_max")) {
    if (v->is_string()) {
      if (v->get<std::string>() != "auto") fail("'n_max' must be an integer or \"auto\"");
    } else {
      cfg.n_max = as_int(*v, "n_max");
    }
  }

  const json* tm = find(doc, "t_max");
  const json* tp = find(doc, "t_max_periods");
  if (tm && tp) fail("'t_max' and 't_max_periods' are mutually exclusive");
  if (tm) cfg.t_max = as_number(*tm, "t_max");
  if (tp)
    cfg.t_max = as_number(*tp, "t_max_periods") * 2 * std::numbers::pi /
                cfg.params.omega1;

  if (const json* v = find(doc, "samples_per_period"))
    cfg.samples_per_period = as_int(*v, "samples_per_period");
  if (const json* v = find(doc, "peak_threshold"))
    cfg.peak_threshold = as_number(*v, "peak_threshold");
  if (const json* v = find(doc, "convergence_tol"))
    cfg.convergence_tol = as_number(*v, "convergence_tol");
  if (const json* v = find(doc, "n_max_limit"))
    cfg.n_max_limit = as_int(*v, "n_max_limit");

  if (const json* v = find(doc, "outputs")) {
    if (!v->is_array()) fail("'outputs' must be an array of strings");
    for (const auto& item : *v) {
      if (!item.is_string()) fail("'outputs' must be an array of strings");
      cfg.outputs.push_back(item.get<std::string>());
    }
  } else {
    cfg.outputs = {"series"};
  }

  if (const json* v = find(doc, "sweep")) {
    if (!v->is_object()) fail("'sweep' must be an object");
    reject_unknown(*v, "sweep", {"parameter", "values"});
    SweepSpec sweep;
    const json& name = require(*v, "parameter", "sweep.parameter");
    if (!name.is_string()) fail("field 'sweep.parameter' must be a string");
    sweep.parameter = name.get<std::string>();
    if (!is_known_sweep_parameter(sweep.parameter))
      fail("sweep.parameter must be one of E1, E2, E3, omega2, g1, g2eff");
    const json& values = require(*v, "values", "sweep.values");
    if (!values.is_array() || values.empty())
      fail("field 'sweep.values' must be a non-empty array of numbers");
    for (std::size_t i = 0; i < values.size(); ++i)
      sweep.values.push_back(
          as_number(values[i], "sweep.values[" + std::to_string(i) + "]"));
    cfg.sweep = sweep;
  }

  if (const json* v = find(doc, "waveguide")) {
    if (!v->is_object()) fail("'waveguide' must be an object");
    reject_unknown(*v, "waveguide", {"chi", "alpha", "n_s", "a", "lambda"});
    WaveguideSpec wg;
    wg.law.chi = as_number(require(*v, "chi", "waveguide.chi"), "waveguide.chi");
    wg.law.alpha = as_number(require(*v, "alpha", "waveguide.alpha"), "waveguide.alpha");
    wg.optics.n_s = as_number(require(*v, "n_s", "waveguide.n_s"), "waveguide.n_s");
    wg.optics.a = as_number(require(*v, "a", "waveguide.a"), "waveguide.a");
    wg.optics.lambda =
        as_number(require(*v, "lambda", "waveguide.lambda"), "waveguide.lambda");
    cfg.waveguide = wg;
  }

  return cfg;
}

RunConfig load_run_config_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {  // syntax errors and number overflow
    throw config_error("config " + origin + ": " + e.what());
  }
  return parse_run_config(doc);
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_run_config_text(text.str(), "'" + path.string() + "'");
}

void validate_run_config(const RunConfig& cfg) {
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("params: ") + e.what());
  }
  if (cfg.seed.level < 1 || cfg.seed.level > 3) fail("seed.level must be 1, 2 or 3");
  if (cfg.seed.n < 0) fail("seed.n must be >= 0");
  if (cfg.seed.k != chain_k(cfg.seed.level, cfg.params.kappa))
    fail("seed.k must equal kappa (kappa + 1 on level 2)");
  if (!(cfg.t_max > 0))
    fail("t_max must be > 0 (set 't_max', 't_max_periods', or --tmax)");
  if (cfg.samples_per_period < 16) fail("samples_per_period must be >= 16");
  if (!(cfg.convergence_tol > 0)) fail("convergence_tol must be > 0");
  if (!std::isfinite(cfg.peak_threshold) || cfg.peak_threshold < 0)
    fail("peak_threshold must be finite and >= 0");
  if (cfg.n_max_limit < 8) fail("n_max_limit must be >= 8");
  if (cfg.n_max) {
    if (*cfg.n_max < 0) fail("n_max must be >= 0");
    if (*cfg.n_max < cfg.seed.n) fail("n_max must be >= seed.n");
  }
  for (const auto& out : cfg.outputs) {
    if (out != "series" && out != "spectrum" && out != "layout")
      fail("outputs entries must be 'series', 'spectrum' or 'layout' (got '" + out + "')");
    if (std::count(cfg.outputs.begin(), cfg.outputs.end(), out) > 1)
      fail("outputs entries must be unique (duplicate '" + out + "')");
  }
  const bool wants_layout =
      std::count(cfg.outputs.begin(), cfg.outputs.end(), "layout") > 0;
  if (wants_layout && !cfg.waveguide)
    fail("output 'layout' requires a 'waveguide' section (chi, alpha, n_s, a, lambda)");
  if (cfg.waveguide) {
    if (!(cfg.waveguide->law.chi > 0)) fail("waveguide.chi must be > 0");
    if (!(cfg.waveguide->law.alpha > 0)) fail("waveguide.alpha must be > 0");
    if (!(cfg.waveguide->optics.n_s > 0)) fail("waveguide.n_s must be > 0");
    if (!(cfg.waveguide->optics.a > 0)) fail("waveguide.a must be > 0");
    if (!(cfg.waveguide->optics.lambda > 0)) fail("waveguide.lambda must be > 0");
  }
  if (cfg.sweep && !is_known_sweep_parameter(cfg.sweep->parameter))
    fail("sweep.parameter must be one of E1, E2, E3, omega2, g1, g2eff");
}

void set_swept_parameter(ModelParams<double>& params, const std::string& name,
                         double value) {
  if (name == "E1") {
    params.E1 = value;
  } else if (name == "E2") {
    params.E2 = value;
    params.omega2 = params.E3 - params.E2;
  } else if (name == "E3") {
    params.E3 = value;
    params.omega2 = params.E3 - params.E2;
  } else if (name == "omega2") {
    params.omega2 = value;
    params.E3 = params.E2 + value;
  } else if (name == "g1") {
    params.g1 = value;
  } else if (name == "g2eff") {
    params.g2eff = value;
  } else {
    throw config_error("config: unknown sweep parameter '" + name + "'");
  }
  params.validate();
}

}  // namespace mrjc
