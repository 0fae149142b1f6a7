#pragma once

// Run configuration as JSON. Needs nlohmann's json.hpp on the include path.
//
//   {
//     "name": "example-3.2.1",
//     "model": {"N": 2, "mbar": 3, "omega": 6.283185307179586,
//               "laws": {"1": {"kind": "harmonic", "r": "1/2"},
//                        "2": {"kind": "harmonic", "r": "1/3"}}},
//     "initial": {"positions": [[-2.4, -1.21], [4.89, 2.42]],
//                 "velocities": [[-6.82, -3.92], [-6.81, -2.44]]},
//     "grid": {"t_end": 6, "samples": 1201},
//     "integrator": {"rel_tol": 1e-10, ...},        optional, per-field
//     "outputs": {"dir": "out", "format": "csv"},   optional
//     "period": {"k_max": 8, "tol": 1e-5},          optional
//     "printed_system": "3.2.1",                    optional
//     "compare": {"grid": {...}}                    optional
//   }

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/direct_integrator.hpp"
#include "dblroot/polynomial.hpp"
#include "dblroot/presets.hpp"
#include "dblroot/printed_systems.hpp"
#include "dblroot/rational.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

struct GridSpec {
  double t_end = 1.0;
  int samples = 2;

  std::vector<double> times() const { return uniform_grid(t_end, samples); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct OutputSpec {
  std::string dir = ".";
  std::string format = "csv";
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct PeriodSpec {
  int k_max = 16;
  double tol = 1e-5;
  friend bool operator==(const PeriodSpec&, const PeriodSpec&) = default;
};

struct RunConfig {
  std::string name;
  ModelSpec model;
  ZeroState initial;
  GridSpec grid;
  IntegratorSettings integrator;
  OutputSpec outputs;
  PeriodSpec period;
  std::optional<std::string> printed_system;
  /// Grid of the direct leg in `compare`; has to equal `grid`.
  std::optional<GridSpec> compare_grid;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

namespace config_detail {

using nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

inline int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(path, "must be a finite positive number");
  return v;
}

inline std::vector<Complex> complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected a list of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2) throw ConfigError(p, "expected [re, im]");
    out.emplace_back(number(e[0], p + "[0]"), number(e[1], p + "[1]"));
  }
  return out;
}

inline json complex_json(std::span<const Complex> zs) {
  json a = json::array();
  for (const auto z : zs) a.push_back({z.real(), z.imag()});
  return a;
}

inline LawKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "linear_velocity") return LawKind::linear_velocity;
  if (s == "harmonic") return LawKind::harmonic;
  if (s == "damped") return LawKind::damped;
  if (s == "frozen") return LawKind::frozen;
  throw ConfigError(path, "unknown law kind '" + s + "' (linear_velocity, harmonic, damped, frozen)");
}

inline ModelSpec parse_model(const json& j) {
  const int N = integer(require(j, "N", "model"), "model.N");
  if (N < 2) throw ConfigError("model.N", "must be >= 2, got " + std::to_string(N));
  const int mbar = integer(require(j, "mbar", "model"), "model.mbar");
  if (mbar < 1 || mbar > N + 1) {
    throw ConfigError("model.mbar",
                      "must be in 1..N+1 = 1.." + std::to_string(N + 1) + ", got " + std::to_string(mbar));
  }
  const auto it_omega = j.find("omega");
  const bool has_omega = it_omega != j.end();
  const double omega = has_omega ? number(*it_omega, "model.omega") : 0.0;

  const auto& laws_j = require(j, "laws", "model");
  if (!laws_j.is_object()) throw ConfigError("model.laws", "expected an object keyed by coefficient index");
  std::map<int, CoefficientLaw> laws;
  for (const auto& [key, lj] : laws_j.items()) {
    const std::string path = "model.laws." + key;
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ConfigError(path, "law key must be an integer coefficient index");
    }
    if (m < 1 || m > N + 1) throw ConfigError(path, "index out of range 1..N+1");
    if (m == mbar) throw ConfigError(path, "coefficient mbar is reconstructed and takes no law");
    const LawKind kind = parse_kind(text(require(lj, "kind", path), path + ".kind"), path + ".kind");
    try {
      switch (kind) {
        case LawKind::linear_velocity:
        case LawKind::harmonic: {
          if (!has_omega) throw ConfigError("model.omega", "required by periodic laws");
          const auto& rj = require(lj, "r", path);
          Rational r{1};
          try {
            r = rj.is_string() ? Rational::parse(rj.get<std::string>())
                               : Rational{integer(rj, path + ".r")};
          } catch (const ConfigError&) {
            throw;
          } catch (const std::exception& e) {
            throw ConfigError(path + ".r", e.what());
          }
          laws[m] = kind == LawKind::harmonic ? CoefficientLaw::harmonic(r, omega)
                                              : CoefficientLaw::linear_velocity(r, omega);
          break;
        }
        case LawKind::damped: laws[m] = CoefficientLaw::damped(number(require(lj, "a", path), path + ".a")); break;
        case LawKind::frozen: laws[m] = CoefficientLaw::frozen(); break;
      }
    } catch (const ContractViolation& e) {
      throw ConfigError(path, e.what());
    }
  }
  if (laws.size() != static_cast<std::size_t>(N)) {
    throw ConfigError("model.laws", "needs exactly N = " + std::to_string(N) + " laws, one per index other than mbar");
  }
  return ModelSpec(N, mbar, laws);
}

inline json model_json(const ModelSpec& spec) {
  json laws = json::object();
  std::optional<double> omega;
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (!spec.evolved(m)) continue;
    const auto& law = spec.law(m);
    json lj = {{"kind", to_string(law.kind)}};
    if (law.is_periodic()) {
      lj["r"] = law.r.str();
      if (omega && *omega != law.omega) throw ContractViolation("config: periodic laws must share omega");
      omega = law.omega;
    }
    if (law.kind == LawKind::damped) lj["a"] = law.a;
    laws[std::to_string(m)] = lj;
  }
  json j = {{"N", spec.N()}, {"mbar", spec.mbar()}, {"laws", laws}};
  if (omega) j["omega"] = *omega;
  return j;
}

inline GridSpec parse_grid(const json& j, const std::string& path) {
  GridSpec g;
  g.t_end = positive(require(j, "t_end", path), path + ".t_end");
  g.samples = integer(require(j, "samples", path), path + ".samples");
  if (g.samples < 2) throw ConfigError(path + ".samples", "must be >= 2");
  return g;
}

inline json grid_json(const GridSpec& g) { return {{"t_end", g.t_end}, {"samples", g.samples}}; }

inline IntegratorSettings parse_integrator(const json& j) {
  IntegratorSettings s;
  if (!j.is_object()) throw ConfigError("integrator", "expected an object");
  for (const auto& [key, v] : j.items()) {
    const auto path = "integrator." + key;
    if (key == "rel_tol") s.rel_tol = positive(v, path);
    else if (key == "abs_tol") s.abs_tol = positive(v, path);
    else if (key == "max_step") s.max_step = positive(v, path);
    else if (key == "initial_step") s.initial_step = positive(v, path);
    else if (key == "min_step") s.min_step = positive(v, path);
    else if (key == "max_steps") {
      if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) throw ConfigError(path, "must be a positive integer");
      s.max_steps = v.get<std::size_t>();
    } else {
      throw ConfigError(path, "unknown integrator setting");
    }
  }
  return s;
}

inline json integrator_json(const IntegratorSettings& s) {
  return {{"rel_tol", s.rel_tol},         {"abs_tol", s.abs_tol},   {"max_step", s.max_step},
          {"initial_step", s.initial_step}, {"min_step", s.min_step}, {"max_steps", s.max_steps}};
}

}  // namespace config_detail

/// Parameters of a catalog system that reproduce `model`; throws ConfigError
/// when the model does not have the shape of that system.
inline printed::Params printed_params(const printed::System& sys, const ModelSpec& model) {
  printed::Params p;
  std::optional<Rational> common;
  for (int m = 1; m <= model.N() + 1; ++m) {
    if (!model.evolved(m)) continue;
    const auto& law = model.law(m);
    if (law.is_periodic()) {
      p.omega = law.omega;
      if (m <= 4) p.rm[m] = law.r;
      if (!common) common = law.r;
    }
    if (law.kind == LawKind::damped) p.a = law.a;
  }
  if (common) p.r = *common;
  bool matches = model.N() == sys.N && model.mbar() == sys.mbar;
  if (matches) {
    try {
      matches = printed::model_spec(sys, p) == model;
    } catch (const ContractViolation&) {
      matches = false;
    }
  }
  if (!matches) throw ConfigError("printed_system", "model does not have the shape of system " + sys.id);
  return p;
}

inline RunConfig parse_config(const nlohmann::json& j) {
  using namespace config_detail;
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  const std::string name = j.contains("name") ? text(j["name"], "name") : "run";
  ModelSpec model = parse_model(require(j, "model", ""));

  const auto& ij = require(j, "initial", "");
  auto xs = complex_list(require(ij, "positions", "initial"), "initial.positions");
  auto vs = complex_list(require(ij, "velocities", "initial"), "initial.velocities");
  if (xs.size() != static_cast<std::size_t>(model.N())) {
    throw ConfigError("initial.positions", "needs N = " + std::to_string(model.N()) + " entries");
  }
  if (vs.size() != xs.size()) throw ConfigError("initial.velocities", "needs as many entries as positions");
  std::optional<ZeroState> initial;
  try {
    initial.emplace(std::move(xs), std::move(vs));
  } catch (const SingularConfiguration& e) {
    throw ConfigError("initial.positions", e.what());
  } catch (const ContractViolation& e) {
    throw ConfigError("initial", e.what());
  }

  RunConfig cfg{name, model, *initial, parse_grid(require(j, "grid", ""), "grid"), {}, {}, {}, std::nullopt,
                std::nullopt};
  if (j.contains("integrator")) cfg.integrator = parse_integrator(j["integrator"]);
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    if (o.contains("dir")) cfg.outputs.dir = text(o["dir"], "outputs.dir");
    if (o.contains("format")) {
      cfg.outputs.format = text(o["format"], "outputs.format");
      if (cfg.outputs.format != "csv" && cfg.outputs.format != "json") {
        throw ConfigError("outputs.format", "must be csv or json");
      }
    }
  }
  if (j.contains("period")) {
    const auto& pj = j["period"];
    if (pj.contains("k_max")) {
      cfg.period.k_max = integer(pj["k_max"], "period.k_max");
      if (cfg.period.k_max < 1) throw ConfigError("period.k_max", "must be >= 1");
    }
    if (pj.contains("tol")) cfg.period.tol = positive(pj["tol"], "period.tol");
  }
  if (j.contains("printed_system")) {
    const auto id = text(j["printed_system"], "printed_system");
    try {
      printed_params(printed::find(id), cfg.model);
    } catch (const ContractViolation& e) {
      throw ConfigError("printed_system", e.what());
    }
    cfg.printed_system = id;
  }
  if (j.contains("compare")) {
    cfg.compare_grid = parse_grid(require(j["compare"], "grid", "compare"), "compare.grid");
  }
  return cfg;
}

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<file>", e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline nlohmann::json to_json(const RunConfig& cfg) {
  using namespace config_detail;
  json j = {{"name", cfg.name},
            {"model", model_json(cfg.model)},
            {"initial",
             {{"positions", complex_json(cfg.initial.positions())},
              {"velocities", complex_json(cfg.initial.velocities())}}},
            {"grid", grid_json(cfg.grid)},
            {"integrator", integrator_json(cfg.integrator)},
            {"outputs", {{"dir", cfg.outputs.dir}, {"format", cfg.outputs.format}}},
            {"period", {{"k_max", cfg.period.k_max}, {"tol", cfg.period.tol}}}};
  if (cfg.printed_system) j["printed_system"] = *cfg.printed_system;
  if (cfg.compare_grid) j["compare"] = {{"grid", grid_json(*cfg.compare_grid)}};
  return j;
}

inline RunConfig config_from_preset(const Preset& p) {
  const auto& sys = printed::find(p.system_id);
  return RunConfig{p.name,
                   printed::model_spec(sys, p.params),
                   ZeroState(p.positions, p.velocities),
                   GridSpec{p.t_end, p.samples},
                   {},
                   {},
                   PeriodSpec{p.k_max, 1e-5},
                   p.system_id,
                   std::nullopt};
}

}  // namespace dblroot
