// dblroot: command-line front end for the double-root zero dynamics.
//
//   dblroot solve|integrate|compare|period [--preset NAME]... [--config PATH]
//           [--out DIR] [--format csv|json] [--rel-tol X] [--seed N]
//           [--perturb-initial X]
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 collision or singular configuration.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dblroot/config.hpp"
#include "dblroot/dblroot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dblroot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCollision = 4;

struct Options {
  std::string command;
  std::vector<std::string> presets;
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<double> rel_tol;
  std::uint64_t seed = 20240917;
  double perturb = 0.0;
  bool printed = false;
  bool verbatim = false;
  std::string pipeline = "direct";
  std::string save_config;
};

struct Outcome {
  int code = kExitOk;
  std::string out;  // goes to stdout
  std::string err;  // goes to stderr
};

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const SingularConfiguration*>(&e)) return kExitCollision;
  if (const auto* t = dynamic_cast<const TrackingError*>(&e)) {
    return t->kind() == TrackingError::Kind::ambiguous_branch ? kExitCollision : kExitNumerical;
  }
  return kExitNumerical;
}

json error_json(const std::string& name, const Error& e) {
  json j = {{"run", name}, {"error_class", e.error_class()}, {"message", e.what()}};
  if (const auto* c = dynamic_cast<const ConfigError*>(&e)) j["field"] = c->field();
  if (const auto* s = dynamic_cast<const SingularConfiguration*>(&e)) {
    j["pair"] = {s->first(), s->second()};
    j["separation"] = s->separation();
  }
  if (const auto* c = dynamic_cast<const CollisionError*>(&e)) j["time"] = c->time();
  if (const auto* t = dynamic_cast<const TrackingError*>(&e)) j["time"] = t->time();
  if (const auto* c = dynamic_cast<const ConvergenceError*>(&e)) j["residual"] = c->residual();
  return j;
}

ZeroState perturbed(const ZeroState& s, double eps, std::uint64_t seed) {
  if (eps == 0.0) return s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> x(s.positions().begin(), s.positions().end());
  for (auto& z : x) z += std::polar(eps, angle(rng));
  return ZeroState(std::move(x), std::vector<Complex>(s.velocities().begin(), s.velocities().end()));
}

/// Period unit in multiples of T: the coefficient period when every law is
/// periodic, otherwise the period the damped model settles into.
std::optional<double> period_unit(const ModelSpec& spec) {
  if (!spec.basic_period()) return std::nullopt;
  if (period_multiple(spec)) return 1.0;
  if (const auto k = asymptotic_period_multiple(spec)) return k->value();
  return std::nullopt;
}

json period_residuals_json(const ModelSpec& spec, const TrackedTrajectory& traj) {
  const auto unit = period_unit(spec);
  if (!unit) return nullptr;
  const double P = *unit * *spec.basic_period();
  const int count = static_cast<int>(std::floor(traj.times.back() / P + 1e-9));
  try {
    return {{"P", P}, {"d", period_residuals(traj, P, count)}};
  } catch (const ContractViolation&) {
    return nullptr;  // grid does not sample multiples of P
  }
}

json trajectory_json(const TrackedTrajectory& traj) {
  json t = json::array(), x = json::array(), v = json::array();
  for (std::size_t k = 0; k < traj.size(); ++k) {
    t.push_back(traj.times[k]);
    x.push_back(config_detail::complex_json(traj.states[k].positions()));
    v.push_back(config_detail::complex_json(traj.states[k].velocities()));
  }
  return {{"provenance", to_string(traj.provenance)}, {"t", t}, {"x", x}, {"v", v}};
}

json diagnostics_json(const RunConfig& cfg, const TrackedTrajectory& traj) {
  json j = {{"run", cfg.name},
            {"provenance", to_string(traj.provenance)},
            {"samples", traj.size()},
            {"internal_steps", traj.internal_steps},
            {"refinements", traj.refinements}};
  json ybar = json::array();
  for (std::size_t k = 0; k < traj.ybar.size(); ++k) {
    ybar.push_back({traj.times[k], traj.ybar[k].real(), traj.ybar[k].imag()});
  }
  j["ybar"] = ybar;
  if (!traj.diagnostics.empty()) {
    json sep = json::array(), res = json::array();
    double max_sep = 0, max_disc = 0, max_p = 0, max_dp = 0;
    for (const auto& d : traj.diagnostics) {
      sep.push_back(d.pair_separation);
      res.push_back({d.residual_p, d.residual_dp});
      max_sep = std::max(max_sep, d.pair_separation);
      max_disc = std::max(max_disc, d.x1_discrepancy);
      max_p = std::max(max_p, d.residual_p);
      max_dp = std::max(max_dp, d.residual_dp);
    }
    j["double_root_separation"] = sep;
    j["constraint_residuals"] = res;
    j["summary"] = {{"max_double_root_separation", max_sep},
                    {"max_x1_discrepancy", max_disc},
                    {"max_residual_p", max_p},
                    {"max_residual_dp", max_dp}};
  }
  j["period_residuals"] = period_residuals_json(cfg.model, traj);
  return j;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("outputs.dir", "cannot write " + path.string());
  os << content;
}

void write_trajectory(const RunConfig& cfg, const std::string& stem, const TrackedTrajectory& traj) {
  const fs::path dir = cfg.outputs.dir;
  if (cfg.outputs.format == "json") {
    write_file(dir / (stem + ".json"), trajectory_json(traj).dump() + "\n");
  } else {
    std::ostringstream os;
    csv::write(os, traj);
    write_file(dir / (stem + ".csv"), os.str());
  }
  write_file(dir / (stem + ".diagnostics.json"), diagnostics_json(cfg, traj).dump(2) + "\n");
}

TrackedTrajectory run_direct(const RunConfig& cfg, const ZeroState& initial, std::span<const double> grid,
                             const Options& opt) {
  if (!opt.printed) return integrate(cfg.model, initial, grid, cfg.integrator);
  if (!cfg.printed_system) throw ConfigError("printed_system", "required by --printed");
  const auto& sys = printed::find(*cfg.printed_system);
  return integrate_printed(sys.id, printed_params(sys, cfg.model), initial, grid, cfg.integrator,
                           opt.verbatim ? Reading::verbatim : Reading::corrected);
}

std::string summary_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Outcome run_one(const RunConfig& base, const Options& opt) {
  Outcome res;
  RunConfig cfg = base;
  try {
    if (!opt.out_dir.empty()) cfg.outputs.dir = opt.out_dir;
    if (!opt.format.empty()) cfg.outputs.format = opt.format;
    if (opt.rel_tol) cfg.integrator.rel_tol = *opt.rel_tol;
    const auto grid = cfg.grid.times();
    const std::string stem = cfg.name + "." + opt.command;

    if (opt.command == "solve") {
      const auto traj = solve(SolveRequest{cfg.model, perturbed(cfg.initial, opt.perturb, opt.seed), grid});
      write_trajectory(cfg, stem, traj);
      res.out = cfg.name + ": solved " + std::to_string(traj.size()) + " samples -> " +
                (fs::path(cfg.outputs.dir) / stem).string() + "\n";
    } else if (opt.command == "integrate") {
      const auto traj = run_direct(cfg, perturbed(cfg.initial, opt.perturb, opt.seed), grid, opt);
      write_trajectory(cfg, stem, traj);
      const double drift = position_distance(traj.states.back(), traj.states.front());
      res.out = cfg.name + ": integrated " + std::to_string(traj.size()) + " samples, |x(t_end) - x(0)| = " +
                summary_number(drift) + " -> " + (fs::path(cfg.outputs.dir) / stem).string() + "\n";
    } else if (opt.command == "compare") {
      if (cfg.compare_grid && !(*cfg.compare_grid == cfg.grid)) {
        throw ConfigError("compare.grid", "differs from grid; both pipelines must sample the same times");
      }
      const auto alg = solve(SolveRequest{cfg.model, cfg.initial, grid});
      const auto dir = run_direct(cfg, perturbed(cfg.initial, opt.perturb, opt.seed), grid, opt);
      const auto rep = compare(alg, dir);
      const json j = {{"run", cfg.name},
                      {"max_err", rep.max_err},
                      {"at_time", rep.at_time},
                      {"per_zero_err", rep.per_zero_err},
                      {"position_err", rep.position_err},
                      {"velocity_err", rep.velocity_err},
                      {"optimal_assignment_err", rep.optimal_assignment_err}};
      write_file(fs::path(cfg.outputs.dir) / (stem + ".json"), j.dump(2) + "\n");
      res.out = cfg.name + ": max_err " + summary_number(rep.max_err) + " at t = " + std::to_string(rep.at_time) +
                " (positions " + summary_number(rep.position_err) + ", velocities " +
                summary_number(rep.velocity_err) + ")\n";
    } else if (opt.command == "period") {
      const auto T = cfg.model.basic_period();
      const auto unit = period_unit(cfg.model);
      if (!T || !unit) throw ConfigError("model", "period detection needs periodic laws sharing one omega");
      const double P = *unit * *T;
      const int k_max = cfg.period.k_max;
      const auto pgrid = uniform_grid(k_max * P, k_max * 200 + 1);
      const auto initial = perturbed(cfg.initial, opt.perturb, opt.seed);
      const auto traj = opt.pipeline == "algebraic" ? solve(SolveRequest{cfg.model, initial, pgrid})
                                                    : run_direct(cfg, initial, pgrid, opt);
      const auto rep = detect_period(traj, P, k_max, cfg.period.tol);
      const json j = {{"run", cfg.name},
                      {"T", *T},
                      {"unit", *unit},
                      {"multiple_of_unit", rep.multiple_of_T},
                      {"candidate_period", rep.candidate_period},
                      {"residual", rep.residual},
                      {"verdict", to_string(rep.verdict)},
                      {"residuals", rep.residuals},
                      {"increments", rep.increments}};
      write_file(fs::path(cfg.outputs.dir) / (stem + ".json"), j.dump(2) + "\n");
      res.out = cfg.name + ": " + to_string(rep.verdict) + ", candidate period " +
                summary_number(rep.candidate_period) + " (k = " + std::to_string(rep.multiple_of_T) + " x " +
                summary_number(P) + "), residual " + summary_number(rep.residual) + "\n";
    }
  } catch (const Error& e) {
    res.code = exit_code_for(e);
    res.err = error_json(cfg.name, e).dump() + "\n";
  }
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Move the zeros of an evolving polynomial that keeps a double zero"};
  app.require_subcommand(0, 1);
  Options opt;
  bool list = false;
  app.add_flag("--list-presets", list, "Print the compiled-in presets and exit");

  for (const char* name : {"solve", "integrate", "compare", "period"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--preset", opt.presets, "Compiled-in preset (repeatable; runs concurrently)");
    sub->add_option("--config", opt.config_path, "JSON run configuration");
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--format", opt.format, "Trajectory format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--rel-tol", opt.rel_tol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Seed for --perturb-initial");
    sub->add_option("--perturb-initial", opt.perturb, "Displace initial positions by this distance")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--printed", opt.printed, "Integrate the hand-transcribed system instead of the generic one");
    sub->add_flag("--verbatim", opt.verbatim, "With --printed, keep known misprints");
    sub->add_option("--pipeline", opt.pipeline, "Trajectory source for period")
        ->check(CLI::IsMember({"direct", "algebraic"}));
    sub->add_option("--save-config", opt.save_config, "Write the resolved configuration and exit");
    sub->callback([&opt, sub] { opt.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (list) {
    for (const auto& p : presets()) {
      std::cout << p.name << "  (system " << p.system_id << ", t_end " << p.t_end << ")\n";
    }
    return kExitOk;
  }
  if (opt.command.empty()) {
    std::cerr << app.help();
    return kExitConfig;
  }

  std::vector<RunConfig> configs;
  try {
    if (opt.presets.empty() == opt.config_path.empty()) {
      throw ConfigError("<cli>", "give either --preset or --config");
    }
    if (!opt.config_path.empty()) configs.push_back(load_config(opt.config_path));
    for (const auto& name : opt.presets) {
      const Preset* p = find_preset(name);
      if (!p) {
        std::string known;
        for (const auto& n : preset_names()) known += "\n  " + n;
        throw ConfigError("--preset", "unknown preset '" + name + "'; available presets:" + known);
      }
      configs.push_back(config_from_preset(*p));
    }
    if (!opt.save_config.empty()) {
      if (configs.size() != 1) throw ConfigError("--save-config", "needs exactly one run");
      write_file(opt.save_config, to_json(configs.front()).dump(2) + "\n");
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << error_json("<cli>", e).dump() << "\n";
    if (e.field() == "--preset") std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [&opt, cfg] { return run_one(cfg, opt); }));
  }
  int code = kExitOk;
  for (auto& job : jobs) {
    const Outcome o = job.get();
    std::cout << o.out;
    std::cerr << o.err;
    code = std::max(code, o.code);
  }
  return code;
}
