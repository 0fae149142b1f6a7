#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dblroot/polynomial.hpp"
#include "dblroot/trajectory.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

/// Max-norm distance between two zero states, positions and velocities.
inline double state_distance(const ZeroState& a, const ZeroState& b) {
  if (a.size() != b.size()) throw ContractViolation("state_distance: zero counts differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max({d, std::abs(a.positions()[i] - b.positions()[i]), std::abs(a.velocities()[i] - b.velocities()[i])});
  }
  return d;
}

inline double position_distance(const ZeroState& a, const ZeroState& b) {
  if (a.size() != b.size()) throw ContractViolation("position_distance: zero counts differ");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.positions()[i] - b.positions()[i]));
  return d;
}

/// Index of the sample taken at time t; the grid must contain t up to
/// round-off.
inline std::size_t sample_index(const TrackedTrajectory& traj, double t) {
  const auto& ts = traj.times;
  if (ts.empty()) throw ContractViolation("empty trajectory");
  const double slack = 1e-9 * std::max(1.0, std::abs(t));
  if (t > ts.back() + slack) {
    throw ContractViolation("trajectory too short: ends at t = " + std::to_string(ts.back()) +
                            ", needs t = " + std::to_string(t));
  }
  const auto it = std::lower_bound(ts.begin(), ts.end(), t - slack);
  if (it == ts.end() || std::abs(*it - t) > slack) {
    throw ContractViolation("trajectory has no sample at t = " + std::to_string(t));
  }
  return static_cast<std::size_t>(it - ts.begin());
}

inline const ZeroState& state_at(const TrackedTrajectory& traj, double t) {
  return traj.states[sample_index(traj, t)];
}

enum class PeriodVerdict { periodic, not_periodic, asymptotic };

inline const char* to_string(PeriodVerdict v) {
  switch (v) {
    case PeriodVerdict::periodic: return "periodic";
    case PeriodVerdict::not_periodic: return "not_periodic";
    case PeriodVerdict::asymptotic: return "asymptotic";
  }
  return "?";
}

struct PeriodReport {
  double candidate_period = 0.0;
  int multiple_of_T = 0;
  double residual = 0.0;
  PeriodVerdict verdict = PeriodVerdict::not_periodic;
  std::vector<double> residuals;   // |state(kT) - state(0)| for k = 1..k_max
  std::vector<double> increments;  // d_k = |state((k+1)T) - state(kT)| for k = 0..k_max-1
};

/// d_k = |state((k+1)P) - state(kP)|, k = 0..count-1.
inline std::vector<double> period_residuals(const TrackedTrajectory& traj, double P, int count) {
  if (!(P > 0.0)) throw ContractViolation("period must be positive");
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    d.push_back(state_distance(state_at(traj, (k + 1) * P), state_at(traj, k * P)));
  }
  return d;
}

/// Number of leading increments treated as transient by the asymptotic test.
inline constexpr int kAsymptoticSkip = 3;

/// Smallest k <= k_max with |state(kT) - state(0)| <= tol. Without one, the
/// verdict is asymptotic when every increment d_k past the transient shrinks
/// by at least 20% over the previous one.
inline PeriodReport detect_period(const TrackedTrajectory& traj, double T, int k_max, double tol) {
  if (!(T > 0.0)) throw ContractViolation("detect_period: T must be positive");
  if (k_max < 1) throw ContractViolation("detect_period: k_max must be >= 1");
  if (!(tol >= 0.0)) throw ContractViolation("detect_period: tol must be >= 0");
  sample_index(traj, k_max * T);  // coverage check

  PeriodReport rep;
  const ZeroState& s0 = state_at(traj, 0.0);
  for (int k = 1; k <= k_max; ++k) rep.residuals.push_back(state_distance(state_at(traj, k * T), s0));
  rep.increments = period_residuals(traj, T, k_max);

  for (int k = 1; k <= k_max; ++k) {
    if (rep.residuals[static_cast<std::size_t>(k - 1)] <= tol) {
      rep.multiple_of_T = k;
      rep.candidate_period = k * T;
      rep.residual = rep.residuals[static_cast<std::size_t>(k - 1)];
      rep.verdict = PeriodVerdict::periodic;
      return rep;
    }
  }

  const auto best = std::min_element(rep.residuals.begin(), rep.residuals.end());
  rep.multiple_of_T = static_cast<int>(best - rep.residuals.begin()) + 1;
  rep.candidate_period = rep.multiple_of_T * T;
  rep.residual = *best;

  const int start = k_max > kAsymptoticSkip + 1 ? kAsymptoticSkip : 0;
  bool shrinking = k_max - start >= 2;
  for (int k = start + 1; k < k_max && shrinking; ++k) {
    const double prev = rep.increments[static_cast<std::size_t>(k - 1)];
    const double cur = rep.increments[static_cast<std::size_t>(k)];
    shrinking = cur <= 0.8 * prev;
  }
  rep.verdict = shrinking ? PeriodVerdict::asymptotic : PeriodVerdict::not_periodic;
  return rep;
}

struct ComparisonReport {
  double max_err = 0.0;           // max over per_zero_err
  double at_time = 0.0;
  std::vector<double> per_zero_err;  // positions and velocities, per label
  double position_err = 0.0;
  double velocity_err = 0.0;
  /// Max over time of the position mismatch minimized over relabelings of the
  /// simple zeros; below max_err unless labels were swapped.
  double optimal_assignment_err = 0.0;
};

namespace detail {

inline double best_relabeled_distance(const ZeroState& a, const ZeroState& b) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n - 1);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  double best = std::numeric_limits<double>::infinity();
  do {
    double d = std::abs(a.x1() - b.x1());
    for (std::size_t i = 0; i + 1 < n; ++i) d = std::max(d, std::abs(a.positions()[i + 1] - b.positions()[perm[i]]));
    best = std::min(best, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

inline ComparisonReport compare(const TrackedTrajectory& a, const TrackedTrajectory& b) {
  if (a.times != b.times) throw ContractViolation("compare: time grids differ");
  if (a.size() == 0) throw ContractViolation("compare: empty trajectories");
  if (a.zeros() != b.zeros()) throw ContractViolation("compare: zero counts differ");
  ComparisonReport rep;
  rep.per_zero_err.assign(a.zeros(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& sa = a.states[k];
    const auto& sb = b.states[k];
    for (std::size_t i = 0; i < sa.size(); ++i) {
      const double dx = std::abs(sa.positions()[i] - sb.positions()[i]);
      const double dv = std::abs(sa.velocities()[i] - sb.velocities()[i]);
      rep.position_err = std::max(rep.position_err, dx);
      rep.velocity_err = std::max(rep.velocity_err, dv);
      const double e = std::max(dx, dv);
      rep.per_zero_err[i] = std::max(rep.per_zero_err[i], e);
      if (e > rep.max_err) {
        rep.max_err = e;
        rep.at_time = a.times[k];
      }
    }
    rep.optimal_assignment_err =
        std::max(rep.optimal_assignment_err, detail::best_relabeled_distance(sa, sb));
  }
  return rep;
}

}  // namespace dblroot
