#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dblroot/algebraic_solver.hpp"
#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/polynomial.hpp"
#include "dblroot/printed_systems.hpp"
#include "dblroot/trajectory.hpp"
#include "dblroot/types.hpp"
#include "dblroot/zero_dynamics.hpp"

namespace dblroot {

struct IntegratorSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.05;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  std::size_t max_steps = 5'000'000;

  friend bool operator==(const IntegratorSettings&, const IntegratorSettings&) = default;
};

namespace detail {

// Dormand-Prince 5(4) tableau with the 4th-order dense-output weights.
struct DP5 {
  static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

using StateVec = std::vector<Complex>;

inline StateVec axpy(const StateVec& y, double h, std::initializer_list<std::pair<double, const StateVec*>> terms) {
  StateVec out = y;
  for (const auto& [w, k] : terms) {
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += (h * w) * (*k)[i];
  }
  return out;
}

/// Integrates u'' = accel(u, u') for the packed state [u; u'] and reports the
/// solution at the grid times. `accel` may throw SingularConfiguration; the
/// step is then rejected and halved.
template <class Accel, class Emit>
std::pair<std::size_t, std::size_t> dp5_second_order(Accel&& accel, std::span<const Complex> x0, std::span<const Complex> v0,
                                                     std::span<const double> grid, const IntegratorSettings& s,
                                                     Emit&& emit) {
  const std::size_t n = x0.size();
  auto f = [&](const StateVec& y) {
    StateVec dy(2 * n);
    const std::span<const Complex> x(y.data(), n), v(y.data() + n, n);
    const auto acc = accel(x, v);
    for (std::size_t i = 0; i < n; ++i) {
      dy[i] = y[n + i];
      dy[n + i] = acc[i];
    }
    return dy;
  };
  auto unpack = [&](const StateVec& y) {
    emit(StateVec(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)),
         StateVec(y.begin() + static_cast<std::ptrdiff_t>(n), y.end()));
  };

  StateVec y(2 * n);
  std::copy(x0.begin(), x0.end(), y.begin());
  std::copy(v0.begin(), v0.end(), y.begin() + static_cast<std::ptrdiff_t>(n));

  std::size_t next = 0;
  double t = grid.empty() ? 0.0 : grid.front();
  while (next < grid.size() && grid[next] <= t) {
    unpack(y);
    ++next;
  }
  if (next == grid.size()) return {0, 0};

  StateVec k1 = f(y);
  double h = std::min(s.initial_step, s.max_step);
  std::size_t accepted = 0, rejected = 0;
  const double t_end = grid.back();
  std::optional<SingularConfiguration> last_singular;

  while (next < grid.size()) {
    if (accepted + rejected >= s.max_steps) {
      throw ConvergenceError("integrator exceeded max_steps at t = " + std::to_string(t), t);
    }
    h = std::min({h, s.max_step, t_end - t});
    if (h < s.min_step) {
      const std::size_t first = last_singular ? last_singular->first() : 0;
      const std::size_t second = last_singular ? last_singular->second() : 0;
      const double sep = last_singular ? last_singular->separation() : 0.0;
      throw CollisionError("step size underflow at t = " + std::to_string(t) + " (zeros " +
                               std::to_string(first) + " and " + std::to_string(second) + ")",
                           first, second, sep, t);
    }

    using T = DP5;
    StateVec k2, k3, k4, k5, k6, k7, ynew;
    try {
      k2 = f(axpy(y, h, {{T::a21, &k1}}));
      k3 = f(axpy(y, h, {{T::a31, &k1}, {T::a32, &k2}}));
      k4 = f(axpy(y, h, {{T::a41, &k1}, {T::a42, &k2}, {T::a43, &k3}}));
      k5 = f(axpy(y, h, {{T::a51, &k1}, {T::a52, &k2}, {T::a53, &k3}, {T::a54, &k4}}));
      k6 = f(axpy(y, h, {{T::a61, &k1}, {T::a62, &k2}, {T::a63, &k3}, {T::a64, &k4}, {T::a65, &k5}}));
      ynew = axpy(y, h, {{T::a71, &k1}, {T::a73, &k3}, {T::a74, &k4}, {T::a75, &k5}, {T::a76, &k6}});
      k7 = f(ynew);
    } catch (const SingularConfiguration& e) {
      last_singular.emplace(e);
      ++rejected;
      h *= 0.5;
      continue;
    }

    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Complex ei = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                              T::e7 * k7[i]);
      const double sc_re = s.abs_tol + s.rel_tol * std::max(std::abs(y[i].real()), std::abs(ynew[i].real()));
      const double sc_im = s.abs_tol + s.rel_tol * std::max(std::abs(y[i].imag()), std::abs(ynew[i].imag()));
      err = std::max({err, std::abs(ei.real()) / sc_re, std::abs(ei.imag()) / sc_im});
    }
    if (!std::isfinite(err)) {
      ++rejected;
      h *= 0.5;
      continue;
    }
    if (err > 1.0) {
      ++rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    const double t_new = (t_end - (t + h) < 1e-13 * std::max(1.0, std::abs(t_end))) ? t_end : t + h;
    if (next < grid.size() && grid[next] <= t_new) {
      // Dense output coefficients for this step.
      StateVec r2(y.size()), r3(y.size()), r4(y.size()), r5(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        r2[i] = ynew[i] - y[i];
        r3[i] = h * k1[i] - r2[i];
        r4[i] = r2[i] - h * k7[i] - r3[i];
        r5[i] = h * (T::d1 * k1[i] + T::d3 * k3[i] + T::d4 * k4[i] + T::d5 * k5[i] + T::d6 * k6[i] +
                     T::d7 * k7[i]);
      }
      while (next < grid.size() && grid[next] <= t_new) {
        if (grid[next] == t_new) {
          unpack(ynew);
        } else {
          const double th = (grid[next] - t) / h;
          const double th1 = 1.0 - th;
          StateVec yi(y.size());
          for (std::size_t i = 0; i < y.size(); ++i) {
            yi[i] = y[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
          }
          unpack(yi);
        }
        ++next;
      }
    }

    t = t_new;
    y = std::move(ynew);
    k1 = std::move(k7);
    ++accepted;
    last_singular.reset();
    h *= err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
  }
  return {accepted, rejected};
}

template <class Accel>
TrackedTrajectory integrate_with(Accel&& accel, int mbar, const ZeroState& initial, std::span<const double> grid,
                                 const IntegratorSettings& settings) {
  validate_grid(grid);
  if (grid.front() != 0.0) throw ContractViolation("time grid must start at t = 0");
  TrackedTrajectory out;
  out.provenance = Provenance::direct;
  std::size_t k = 0;
  auto emit = [&](StateVec x, StateVec v) {
    out.times.push_back(grid[k++]);
    for (const auto& z : x) {
      if (!is_finite(z)) throw ConvergenceError("integrator produced a non-finite state", 0.0);
    }
    const auto y = coefficients_from_zeros(x);
    out.ybar.push_back(y[static_cast<std::size_t>(mbar - 1)]);
    out.states.emplace_back(std::move(x), std::move(v));
  };
  const auto [acc, rej] = dp5_second_order(std::forward<Accel>(accel), initial.positions(), initial.velocities(),
                                           grid, settings, emit);
  out.internal_steps = acc;
  out.refinements = rej;
  return out;
}

}  // namespace detail

/// Integrates the closed Newtonian system of the zeros with an adaptive
/// Dormand-Prince 5(4) scheme; samples come from its dense output.
inline TrackedTrajectory integrate(const ModelSpec& spec, const ZeroState& initial, std::span<const double> t_grid,
                                   const IntegratorSettings& settings = {}) {
  if (initial.size() != static_cast<std::size_t>(spec.N())) {
    throw ContractViolation("initial state has " + std::to_string(initial.size()) + " zeros, model expects " +
                            std::to_string(spec.N()));
  }
  auto accel = [&](std::span<const Complex> x, std::span<const Complex> v) { return system_rhs(spec, x, v); };
  return detail::integrate_with(accel, spec.mbar(), initial, t_grid, settings);
}

enum class Reading { corrected, verbatim };

/// Integrates one of the hand-transcribed systems. `Reading::verbatim` uses the
/// printed form even where it is known to be inconsistent.
inline TrackedTrajectory integrate_printed(std::string_view system_id, const printed::Params& params,
                                           const ZeroState& initial, std::span<const double> t_grid,
                                           const IntegratorSettings& settings = {},
                                           Reading reading = Reading::corrected) {
  const auto& sys = printed::find(system_id);
  if (initial.size() != static_cast<std::size_t>(sys.N)) {
    throw ContractViolation("printed system " + sys.id + " needs " + std::to_string(sys.N) + " zeros");
  }
  const printed::Rhs rhs = reading == Reading::verbatim ? sys.printed : sys.rhs();
  auto accel = [&](std::span<const Complex> x, std::span<const Complex> v) {
    check_separation(x, kRhsGuard);
    return rhs(params, x, v);
  };
  return detail::integrate_with(accel, sys.mbar, initial, t_grid, settings);
}

}  // namespace dblroot
