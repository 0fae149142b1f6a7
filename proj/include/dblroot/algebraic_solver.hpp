#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/polynomial.hpp"
#include "dblroot/trajectory.hpp"
#include "dblroot/zero_dynamics.hpp"

namespace dblroot {

struct SolveRequest {
  ModelSpec spec;
  ZeroState initial;
  std::vector<double> t_grid;
};

struct TrackingSettings {
  /// Longest internal step between root solves.
  double max_step = 0.01;
  /// A match is ambiguous when the runner-up candidate is closer than
  /// `ambiguity_ratio` times the best distance to the prediction.
  double ambiguity_ratio = 2.0;
  int max_bisections = 20;
  /// Relative tolerance for the t = 0 branch consistency check.
  double consistency_tol = 1e-8;
  RootOptions root_options{};
};

/// Full coefficient vector (leading first, degree N+1) of
///   mbar w^{N+1} + sum_{m != mbar} (mbar - m) y_m w^{N+1-m},
/// whose roots include the double zero x1. Entry mbar of `y` is not read.
inline std::vector<Complex> constraint_polynomial(std::span<const Complex> y, const ModelSpec& spec) {
  const int N = spec.N();
  if (y.size() != static_cast<std::size_t>(N + 1)) throw ContractViolation("constraint needs N+1 coefficients");
  std::vector<Complex> c(static_cast<std::size_t>(N + 2), Complex{});
  c[0] = static_cast<double>(spec.mbar());
  for (int m = 1; m <= N + 1; ++m) {
    if (m == spec.mbar()) continue;
    c[static_cast<std::size_t>(m)] = static_cast<double>(spec.mbar() - m) * y[static_cast<std::size_t>(m - 1)];
  }
  return c;
}

/// Candidate values of x1: the roots of the constraint polynomial. For
/// mbar = N+1 the polynomial has no constant term; the spurious root w = 0 is
/// divided out, leaving N candidates.
inline RootSet x1_constraint_roots(std::span<const Complex> y, const ModelSpec& spec,
                                   const RootOptions& opts = {}) {
  auto c = constraint_polynomial(y, spec);
  if (spec.mbar() == spec.N() + 1) c.pop_back();
  const Complex lead = c.front();
  std::vector<Complex> monic;
  monic.reserve(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) monic.push_back(c[k] / lead);
  return roots(MonicPolynomial(std::move(monic)), opts);
}

/// y_mbar from p(x1) = 0 given all other coefficients.
inline Complex reconstruct_ybar(Complex x1, std::span<const Complex> y, const ModelSpec& spec) {
  if (x1 == Complex{}) throw ContractViolation("reconstruct_ybar needs x1 != 0");
  if (y.size() != static_cast<std::size_t>(spec.N() + 1)) throw ContractViolation("reconstruct_ybar needs N+1 coefficients");
  const int mbar = spec.mbar();
  Complex acc = -ipow(x1, mbar);
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (m == mbar) continue;
    acc -= y[static_cast<std::size_t>(m - 1)] * ipow(x1, mbar - m);
  }
  return acc;
}

namespace detail {

inline void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ContractViolation("time grid is empty");
  if (grid.front() != 0.0) throw ContractViolation("time grid must start at 0");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw ContractViolation("time grid must be strictly increasing");
  }
}

inline double max_abs(std::span<const Complex> v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

struct MarchPoint {
  double t = 0.0;
  std::vector<Complex> x;    // positions, x[0] = x1
  std::vector<Complex> v;    // velocities
  std::vector<Complex> acc;  // accelerations, used by the predictor
  Complex ybar;
  SampleDiagnostics diag;
};

enum class StepOutcome { accepted, ambiguous };

// Forward continuation of all zeros along the exact coefficient flows.
class Marcher {
 public:
  Marcher(const ModelSpec& spec, CoefficientState initial_coefficients, const ZeroState& initial,
          const TrackingSettings& settings)
      : spec_(spec), y0_(std::move(initial_coefficients)), settings_(settings) {
    if (initial.size() != static_cast<std::size_t>(spec.N())) {
      throw ContractViolation("initial state has " + std::to_string(initial.size()) + " zeros, spec needs N = " +
                              std::to_string(spec.N()));
    }
    if (y0_.y.size() != static_cast<std::size_t>(spec.N() + 1) || y0_.ydot.size() != y0_.y.size()) {
      throw ContractViolation("initial coefficient state must hold N+1 values");
    }
    check_initial_branch(initial.x1());
    current_.t = 0.0;
    current_.x.assign(initial.positions().begin(), initial.positions().end());
    current_.v.assign(initial.velocities().begin(), initial.velocities().end());
    finish_point(current_, y0_);
  }

  const MarchPoint& current() const { return current_; }
  std::size_t steps() const { return steps_; }
  std::size_t bisections() const { return bisections_; }

  /// Advances to `target`, subdividing by max_step and bisecting on ambiguity.
  void advance_to(double target) {
    const double span = target - current_.t;
    if (span <= 0.0) return;
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / settings_.max_step - 1e-12)));
    const double t0 = current_.t;
    for (std::size_t k = 1; k <= pieces; ++k) {
      const double tk = k == pieces ? target : t0 + span * static_cast<double>(k) / static_cast<double>(pieces);
      refine_to(tk, 0);
    }
  }

 private:
  void check_initial_branch(Complex x1) {
    const double scale = std::max(1.0, max_abs(y0_.y));
    const auto c = constraint_polynomial(y0_.y, spec_);
    Complex val{};
    double mag = 0.0;
    for (const auto& ck : c) {
      val = val * x1 + ck;
      mag = mag * std::abs(x1) + std::abs(ck);
    }
    const auto ybar = reconstruct_ybar(x1, y0_.y, spec_);
    const auto expected = y0_.y[static_cast<std::size_t>(spec_.mbar() - 1)];
    const double mismatch = std::abs(ybar - expected);
    if (std::abs(val) > settings_.consistency_tol * std::max(1.0, mag) ||
        mismatch > settings_.consistency_tol * scale) {
      throw TrackingError("initial x1 is not the double zero of the t = 0 polynomial (constraint residual " +
                              std::to_string(std::abs(val)) + ", y_mbar mismatch " + std::to_string(mismatch) + ")",
                          TrackingError::Kind::inconsistent_initial_branch, 0.0);
    }
  }

  void refine_to(double target, int depth) {
    MarchPoint next;
    double closest_pair = 0.0;
    if (try_step(target, next, closest_pair) == StepOutcome::accepted) {
      current_ = std::move(next);
      ++steps_;
      return;
    }
    if (depth >= settings_.max_bisections) {
      const double scale = std::max(1.0, max_abs(current_.x));
      if (closest_pair < 1e-8 * scale) {
        throw TrackingError("candidate branches collide at t = " + std::to_string(target) +
                                " (separation " + std::to_string(closest_pair) + ")",
                            TrackingError::Kind::ambiguous_branch, target);
      }
      throw TrackingError("continuation refinement limit reached at t = " + std::to_string(target),
                          TrackingError::Kind::refinement_limit, target);
    }
    ++bisections_;
    const double mid = 0.5 * (current_.t + target);
    refine_to(mid, depth + 1);
    refine_to(target, depth + 1);
  }

  StepOutcome try_step(double t, MarchPoint& out, double& closest_pair) {
    const double h = t - current_.t;
    const auto cs = evolve(spec_, y0_, t);

    // Step (iii): choose the constraint root continuing x1.
    const auto candidates = x1_constraint_roots(cs.y, spec_, settings_.root_options).roots;
    const Complex predicted_x1 = current_.x[0] + h * current_.v[0] + 0.5 * h * h * current_.acc[0];
    std::size_t best = 0;
    if (!pick(candidates, predicted_x1, best, closest_pair)) return StepOutcome::ambiguous;
    const Complex x1 = candidates[best];

    // Step (iv) and (v): reconstruct y_mbar, find all zeros, match simple zeros.
    auto y = cs.y;
    y[static_cast<std::size_t>(spec_.mbar() - 1)] = reconstruct_ybar(x1, y, spec_);
    const MonicPolynomial p(y);
    const auto rs = roots(p, settings_.root_options);
    const auto dr = identify_double_root(rs, x1, settings_.root_options.clustering_tol);

    std::vector<Complex> simple = dr.simple;
    for (auto& z : simple) polish(p, z);

    const std::size_t nsimple = simple.size();
    std::vector<Complex> predicted(nsimple);
    for (std::size_t n = 0; n < nsimple; ++n) {
      predicted[n] = current_.x[n + 1] + h * current_.v[n + 1] + 0.5 * h * h * current_.acc[n + 1];
    }
    std::vector<std::size_t> assignment;
    if (!assign(predicted, simple, assignment, closest_pair)) return StepOutcome::ambiguous;

    out.t = t;
    out.x.resize(current_.x.size());
    out.x[0] = x1;
    for (std::size_t n = 0; n < nsimple; ++n) out.x[n + 1] = simple[assignment[n]];
    try {
      check_separation(out.x, kRhsGuard);
    } catch (const SingularConfiguration& e) {
      throw CollisionError(std::string("zeros collide during continuation: ") + e.what(), e.first(), e.second(),
                           e.separation(), t);
    }
    CoefficientState full{y, cs.ydot, t};
    finish_point(out, full);
    out.diag.pair_separation = dr.separation;
    out.diag.x1_discrepancy = std::abs(dr.x1 - x1);
    return StepOutcome::accepted;
  }

  // Nearest candidate to `target`; false when the runner-up is too close.
  // `gap` receives the distance between the two nearest candidates.
  bool pick(const std::vector<Complex>& candidates, Complex target, std::size_t& best, double& gap) const {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    std::size_t second = 0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double d = std::abs(candidates[k] - target);
      if (d < d1) {
        d2 = d1;
        second = best;
        d1 = d;
        best = k;
      } else if (d < d2) {
        d2 = d;
        second = k;
      }
    }
    gap = candidates.size() > 1 ? std::abs(candidates[best] - candidates[second])
                                : std::numeric_limits<double>::infinity();
    return !(d2 < settings_.ambiguity_ratio * d1);
  }

  // Greedy minimal-distance assignment of predicted simple zeros to roots.
  bool assign(const std::vector<Complex>& predicted, const std::vector<Complex>& found,
              std::vector<std::size_t>& assignment, double& gap) const {
    const std::size_t n = predicted.size();
    assignment.assign(n, 0);
    if (n == 0) return true;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t dummy = 0;
      double g = 0.0;
      if (n > 1 && !pick(found, predicted[i], dummy, g)) {
        gap = g;
        return false;
      }
    }
    struct Edge {
      double d;
      std::size_t i, j;
    };
    std::vector<Edge> edges;
    edges.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) edges.push_back({std::abs(predicted[i] - found[j]), i, j});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.d < b.d; });
    std::vector<bool> row(n, false), col(n, false);
    for (const auto& e : edges) {
      if (row[e.i] || col[e.j]) continue;
      row[e.i] = col[e.j] = true;
      assignment[e.i] = e.j;
    }
    return true;
  }

  static void polish(const MonicPolynomial& p, Complex& z) {
    for (int k = 0; k < 2; ++k) {
      const Complex d = p.derivative(z);
      if (d == Complex{}) return;
      const Complex step = p(z) / d;
      if (!is_finite(step) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(z))) return;
      z -= step;
    }
  }

  // Velocities from the first-derivative transfer formulas, accelerations for
  // the next prediction, and the constraint diagnostics.
  void finish_point(MarchPoint& pt, const CoefficientState& cs) const {
    const int N = spec_.N();
    auto y = cs.y;
    const auto mbar_index = static_cast<std::size_t>(spec_.mbar() - 1);
    y[mbar_index] = reconstruct_ybar(pt.x[0], y, spec_);
    pt.ybar = y[mbar_index];
    if (pt.t > 0.0) {
      pt.v.assign(static_cast<std::size_t>(N), Complex{});
      pt.v[0] = xdot_double(pt.x, cs.ydot, spec_);
      for (int n = 2; n <= N; ++n) pt.v[static_cast<std::size_t>(n - 1)] = xdot_simple(n, pt.x, cs.ydot, spec_);
    }
    auto ydd = coefficient_accelerations(spec_, y, cs.ydot);
    pt.acc.assign(static_cast<std::size_t>(N), Complex{});
    pt.acc[0] = xddot_double(pt.x, pt.v, ydd, spec_);
    for (int n = 2; n <= N; ++n) pt.acc[static_cast<std::size_t>(n - 1)] = xddot_simple(n, pt.x, pt.v, ydd, spec_);

    const MonicPolynomial p(y);
    pt.diag.residual_p = std::abs(p(pt.x[0]));
    pt.diag.residual_dp = std::abs(p.derivative(pt.x[0]));
    pt.diag.coefficient_scale = std::max(1.0, max_abs(y));
    if (pt.t == 0.0) {
      const auto dr = identify_double_root(roots(p, settings_.root_options), pt.x[0],
                                           settings_.root_options.clustering_tol);
      pt.diag.pair_separation = dr.separation;
      pt.diag.x1_discrepancy = std::abs(dr.x1 - pt.x[0]);
    }
  }

  const ModelSpec& spec_;
  CoefficientState y0_;
  TrackingSettings settings_;
  MarchPoint current_;
  std::size_t steps_ = 0;
  std::size_t bisections_ = 0;
};

inline TrackedTrajectory march(const SolveRequest& request, const CoefficientState& y0,
                               const TrackingSettings& settings) {
  validate_grid(request.t_grid);
  Marcher marcher(request.spec, y0, request.initial, settings);
  TrackedTrajectory out;
  out.provenance = Provenance::algebraic;
  for (const double t : request.t_grid) {
    marcher.advance_to(t);
    const auto& pt = marcher.current();
    out.times.push_back(t);
    out.states.emplace_back(pt.x, pt.v);
    out.ybar.push_back(pt.ybar);
    out.diagnostics.push_back(pt.diag);
  }
  out.internal_steps = marcher.steps();
  out.refinements = marcher.bisections();
  return out;
}

}  // namespace detail

/// Step (i): coefficients and their velocities at t = 0 from the zero state.
inline CoefficientState initial_coefficients(const ZeroState& s) {
  return {coefficients_from_zeros(s), coefficient_velocities_from_zeros(s), 0.0};
}

/// Continuation of the double zero x1 along the coefficient flows started from
/// `ycurves` (the coefficient state at t = 0). Fails when the requested x1(0)
/// is not the double zero of the t = 0 polynomial.
inline std::vector<Complex> track_x1(const SolveRequest& request, const CoefficientState& ycurves,
                                     const TrackingSettings& settings = {}) {
  const auto traj = detail::march(request, ycurves, settings);
  std::vector<Complex> path;
  path.reserve(traj.size());
  for (const auto& s : traj.states) path.push_back(s.x1());
  return path;
}

/// Solves the zero dynamics by algebraic operations: exact coefficient flows,
/// continuation of x1 on the derivative constraint, reconstruction of y_mbar,
/// and root extraction with continuity labeling of the simple zeros.
inline TrackedTrajectory solve(const SolveRequest& request, const TrackingSettings& settings = {}) {
  return detail::march(request, initial_coefficients(request.initial), settings);
}

}  // namespace dblroot
