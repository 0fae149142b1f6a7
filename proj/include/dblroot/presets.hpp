#pragma once

#include <algorithm>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "dblroot/printed_systems.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

/// A compiled-in run: one catalog system with parameters, initial data and
/// a sampling grid. `borrowed_from` names the preset whose parameter values
/// and initial data this one reuses (empty when they are its own).
struct Preset {
  std::string name;
  std::string system_id;
  printed::Params params;
  std::vector<Complex> positions;
  std::vector<Complex> velocities;
  double t_end;
  int samples;
  int k_max;
  std::string borrowed_from;
};

namespace detail {

inline printed::Params two_rates(int m1, Rational r1, int m2, Rational r2) {
  printed::Params p;
  p.omega = 2.0 * std::numbers::pi;
  p.rm[m1] = r1;
  p.rm[m2] = r2;
  return p;
}

inline printed::Params harmonic_damped() {
  printed::Params p;
  p.omega = 2.0 * std::numbers::pi;
  p.r = Rational{1, 3};
  p.a = 0.1;
  return p;
}

inline printed::Params three_body(Rational r1, Rational r2, Rational r3, Rational r4) {
  printed::Params p;
  p.omega = 2.0 * std::numbers::pi;
  p.rm[1] = r1;
  p.rm[2] = r2;
  p.rm[3] = r3;
  p.rm[4] = r4;
  return p;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
  using C = Complex;
  const std::vector<C> xa{{0.90, -0.19}, {1.96, 1.75}}, va{{0.085, -0.37}, {-0.34, 2.14}};
  const std::vector<C> xb{{-2.4, -1.21}, {4.89, 2.42}}, vb{{-6.82, -3.92}, {-6.81, -2.44}};
  const std::vector<C> xc{{0.94, -0.28}, {1.40, 1.11}}, vc{{-0.38, -4.68}, {-9.20, 2.50}};
  const std::vector<C> xd{{1.21, 0.0}, {1.42, 0.89}}, vd{{-0.56, -2.34}, {-1.78, -0.54}};
  const std::vector<C> xe{{1.74, 1.42}, {-3.20, 0.52}, {0.44, -3.15}};
  const std::vector<C> ve{{12.47, 4.46}, {-10.23, 6.40}, {3.16, -14.66}};
  const Rational half{1, 2}, third{1, 3}, two_thirds{2, 3}, unused{1};
  using detail::two_rates;

  // t_end is one full period of the zero trajectories (checked numerically);
  // k_max bounds the period search of the `period` command.
  static const std::vector<Preset> all = {
      {"example-3.1.1", "3.1.1", two_rates(1, half, 2, third), xa, va, 12.0, 2401, 16, ""},
      {"example-3.1.2", "3.1.2", two_rates(1, half, 3, third), xa, va, 12.0, 2401, 16, "example-3.1.1"},
      {"example-3.1.3", "3.1.3", two_rates(2, half, 3, third), xa, va, 12.0, 2401, 16, "example-3.1.1"},
      {"example-3.2.1", "3.2.1", two_rates(1, half, 2, third), xb, vb, 6.0, 1201, 8, ""},
      {"example-3.2.2", "3.2.2", two_rates(1, half, 3, third), xb, vb, 18.0, 3601, 24, "example-3.2.1"},
      {"example-3.2.3", "3.2.3", two_rates(2, half, 3, third), xb, vb, 18.0, 3601, 24, "example-3.2.1"},
      {"example-3.3.1", "3.3.1", two_rates(1, third, 2, half), xc, vc, 6.0, 1201, 8, "example-3.3.3"},
      {"example-3.3.2", "3.3.2", two_rates(1, third, 3, half), xc, vc, 6.0, 1201, 8, "example-3.3.3"},
      {"example-3.3.3", "3.3.3", two_rates(2, third, 3, half), xc, vc, 6.0, 1201, 8, ""},
      {"example-3.4.1", "3.4.1", detail::harmonic_damped(), xd, vd, 30.0, 6001, 10, "example-3.4.2"},
      {"example-3.4.2", "3.4.2", detail::harmonic_damped(), xd, vd, 30.0, 6001, 10, ""},
      {"example-3.4.3", "3.4.3", detail::harmonic_damped(), xd, vd, 30.0, 6001, 10, "example-3.4.2"},
      {"example-3.5-mbar1", "3.5.4", detail::three_body(unused, half, two_thirds, third), xe, ve, 12.0, 2401, 16,
       "example-3.5-mbar3"},
      {"example-3.5-mbar2", "3.5.3", detail::three_body(half, unused, third, two_thirds), xe, ve, 12.0, 2401, 16,
       "example-3.5-mbar3"},
      {"example-3.5-mbar3", "3.5.2", detail::three_body(half, third, unused, two_thirds), xe, ve, 6.0, 1201, 8, ""},
      {"example-3.5-mbar4", "3.5.1", detail::three_body(half, third, third, unused), xe, ve, 24.0, 4801, 30,
       "example-3.5-mbar3"},
  };
  return all;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  return names;
}

inline const Preset* find_preset(std::string_view name) {
  const auto& all = presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  return it == all.end() ? nullptr : &*it;
}

/// Evenly spaced grid of `samples` points on [0, t_end]; both ends are exact.
inline std::vector<double> uniform_grid(double t_end, int samples) {
  if (samples < 2 || !(t_end > 0.0)) throw ContractViolation("grid needs samples >= 2 and t_end > 0");
  std::vector<double> g(static_cast<std::size_t>(samples));
  const double n = samples - 1;
  for (int k = 0; k < samples; ++k) g[static_cast<std::size_t>(k)] = t_end * (k / n);
  g.back() = t_end;
  return g;
}

}  // namespace dblroot
