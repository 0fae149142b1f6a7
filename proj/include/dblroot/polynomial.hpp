#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dblroot/types.hpp"

namespace dblroot {

/// Minimum separation accepted when a ZeroState is constructed.
inline constexpr double kZeroStateGuard = 1e-10;

/// Throws SingularConfiguration when two entries of `positions` (x1 first) are
/// closer than `guard`, or when |x1| < guard.
inline void check_separation(std::span<const Complex> positions, double guard) {
  if (positions.empty()) return;
  if (std::abs(positions[0]) < guard) {
    throw SingularConfiguration("double zero x1 at the origin", 1, 0, std::abs(positions[0]));
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double d = std::abs(positions[i] - positions[j]);
      if (d < guard) {
        throw SingularConfiguration("zeros x" + std::to_string(i + 1) + " and x" +
                                        std::to_string(j + 1) + " coincide",
                                    i + 1, j + 1, d);
      }
    }
  }
}

/// Positions and velocities of the N zeros of a degree-(N+1) monic polynomial
/// whose first zero x1 is double. Index 0 holds x1, indices 1..N-1 hold x2..xN.
class ZeroState {
 public:
  ZeroState(std::vector<Complex> positions, std::vector<Complex> velocities)
      : positions_(std::move(positions)), velocities_(std::move(velocities)) {
    if (positions_.size() < 2) throw ContractViolation("ZeroState needs N >= 2 zeros");
    if (velocities_.size() != positions_.size()) {
      throw ContractViolation("ZeroState velocity count differs from position count");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (!is_finite(positions_[i]) || !is_finite(velocities_[i])) {
        throw ContractViolation("ZeroState holds a non-finite value");
      }
    }
    check_separation(positions_, kZeroStateGuard);
  }

  ZeroState(Complex x1, std::vector<Complex> simple, Complex v1, std::vector<Complex> vsimple)
      : ZeroState(prepend(x1, std::move(simple)), prepend(v1, std::move(vsimple))) {}

  std::size_t size() const { return positions_.size(); }  // N
  Complex x1() const { return positions_[0]; }
  Complex v1() const { return velocities_[0]; }
  std::span<const Complex> simple() const { return std::span(positions_).subspan(1); }
  std::span<const Complex> vsimple() const { return std::span(velocities_).subspan(1); }
  std::span<const Complex> positions() const { return positions_; }
  std::span<const Complex> velocities() const { return velocities_; }

  friend bool operator==(const ZeroState&, const ZeroState&) = default;

 private:
  static std::vector<Complex> prepend(Complex head, std::vector<Complex> tail) {
    tail.insert(tail.begin(), head);
    return tail;
  }

  std::vector<Complex> positions_;
  std::vector<Complex> velocities_;
};

/// z^n + y_1 z^{n-1} + ... + y_n with the leading coefficient implicit.
struct MonicPolynomial {
  std::vector<Complex> coeffs;  // y_1 .. y_n

  explicit MonicPolynomial(std::vector<Complex> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw ContractViolation("monic polynomial of degree 0");
  }

  std::size_t degree() const { return coeffs.size(); }

  Complex operator()(Complex z) const {
    Complex acc{1.0, 0.0};
    for (const auto& c : coeffs) acc = acc * z + c;
    return acc;
  }

  Complex derivative(Complex z) const {
    Complex p{1.0, 0.0};
    Complex dp{0.0, 0.0};
    for (const auto& c : coeffs) {
      dp = dp * z + p;
      p = p * z + c;
    }
    return dp;
  }

  Complex second_derivative(Complex z) const {
    Complex p{1.0, 0.0}, dp{}, ddp{};
    for (const auto& c : coeffs) {
      ddp = ddp * z + 2.0 * dp;
      dp = dp * z + p;
      p = p * z + c;
    }
    return ddp;
  }

  /// Sum of |coefficient| * |z|^k; scales rounding error in evaluating p(z).
  double magnitude(Complex z) const {
    const double az = std::abs(z);
    double acc = 1.0;
    for (const auto& c : coeffs) acc = acc * az + std::abs(c);
    return acc;
  }
};

namespace detail {

// Multiplies the full coefficient vector (leading first) by (z - root).
inline void multiply_linear(std::vector<Complex>& full, Complex root) {
  full.push_back(Complex{});
  for (std::size_t k = full.size() - 1; k > 0; --k) full[k] -= root * full[k - 1];
}

// Full coefficient vector (leading 1 first) of prod (z - r).
inline std::vector<Complex> expand(std::span<const Complex> roots) {
  std::vector<Complex> full{Complex{1.0, 0.0}};
  full.reserve(roots.size() + 1);
  for (const auto& r : roots) multiply_linear(full, r);
  return full;
}

inline std::vector<Complex> with_double_first(std::span<const Complex> positions) {
  std::vector<Complex> tilde;
  tilde.reserve(positions.size() + 1);
  tilde.push_back(positions[0]);
  tilde.insert(tilde.end(), positions.begin(), positions.end());
  return tilde;
}

}  // namespace detail

/// y_m = (-1)^m sigma_m(x1, x1, x2, ..., xN), m = 1..N+1.
inline std::vector<Complex> coefficients_from_zeros(std::span<const Complex> positions) {
  if (positions.size() < 2) throw ContractViolation("coefficients_from_zeros needs N >= 2");
  auto full = detail::expand(detail::with_double_first(positions));
  return {full.begin() + 1, full.end()};
}

inline std::vector<Complex> coefficients_from_zeros(const ZeroState& s) {
  return coefficients_from_zeros(s.positions());
}

inline std::vector<Complex> coefficients_from_zeros(const ZeroState& s, std::size_t N) {
  if (s.size() != N) throw ContractViolation("ZeroState size does not match N");
  return coefficients_from_zeros(s);
}

/// Time derivatives of y_m along the motion: the coefficient vector of
/// -sum_k xdot~_k prod_{j != k}(z - x~_j) over the multiset x~ = (x1, x1, x2, ..., xN).
inline std::vector<Complex> coefficient_velocities_from_zeros(std::span<const Complex> positions,
                                                              std::span<const Complex> velocities) {
  if (positions.size() < 2 || velocities.size() != positions.size()) {
    throw ContractViolation("coefficient_velocities_from_zeros: size mismatch");
  }
  const auto tilde = detail::with_double_first(positions);
  const auto tilde_v = detail::with_double_first(velocities);
  const std::size_t n = tilde.size();  // N+1
  std::vector<Complex> ydot(n, Complex{});
  std::vector<Complex> others;
  others.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (tilde_v[k] == Complex{}) continue;
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) others.push_back(tilde[j]);
    }
    const auto partial = detail::expand(others);  // degree N, length N+1
    for (std::size_t m = 0; m < n; ++m) ydot[m] -= tilde_v[k] * partial[m];
  }
  return ydot;
}

inline std::vector<Complex> coefficient_velocities_from_zeros(const ZeroState& s) {
  return coefficient_velocities_from_zeros(s.positions(), s.velocities());
}

inline std::vector<Complex> coefficient_velocities_from_zeros(const ZeroState& s, std::size_t N) {
  if (s.size() != N) throw ContractViolation("ZeroState size does not match N");
  return coefficient_velocities_from_zeros(s);
}

// ---------------------------------------------------------------------------
// Root finding

struct RootSet {
  std::vector<Complex> roots;
  std::optional<std::pair<std::size_t, std::size_t>> pairing;
};

struct RootOptions {
  int max_iterations = 600;
  /// Pairs closer than this are reported as a numerically double root.
  double clustering_tol = 1e-5;
};

namespace detail {

// Coefficients (leading first) of p(z + c).
inline std::vector<Complex> taylor_shift(const MonicPolynomial& p, Complex c) {
  std::vector<Complex> a{Complex{1.0, 0.0}};
  a.insert(a.end(), p.coeffs.begin(), p.coeffs.end());
  const std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 1; k <= n - i; ++k) a[k] += c * a[k - 1];
  }
  return a;
}

inline std::optional<std::pair<std::size_t, std::size_t>> closest_pair(
    std::span<const Complex> roots, double tol) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      const double d = std::abs(roots[i] - roots[j]);
      if (d < best_d) {
        best_d = d;
        best = std::pair{i, j};
      }
    }
  }
  if (best_d < tol) return best;
  return std::nullopt;
}

// Re-centres a clustered pair on the critical point between them (Newton on
// p') and splits it symmetrically by the local quadratic model. The midpoint
// then carries full precision instead of the O(sqrt(eps)) split error, and a
// pair whose residual is pure rounding collapses onto it.
inline void polish_pair(const MonicPolynomial& p, std::vector<Complex>& r, std::pair<std::size_t, std::size_t> ij) {
  const Complex start = 0.5 * (r[ij.first] + r[ij.second]);
  const double reach = std::max(std::abs(r[ij.first] - r[ij.second]), 1e-300);
  Complex c = start;
  for (int it = 0; it < 8; ++it) {
    const Complex d2 = p.second_derivative(c);
    if (d2 == Complex{}) return;
    const Complex step = p.derivative(c) / d2;
    c -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c))) break;
  }
  if (!is_finite(c) || std::abs(c - start) > reach) return;
  // A residual at the rounding level of the evaluation carries no split.
  const Complex pc = p(c);
  const double noise =
      4.0 * static_cast<double>(p.degree() + 1) * std::numeric_limits<double>::epsilon() * p.magnitude(c);
  const Complex half_split = std::abs(pc) <= noise ? Complex{} : std::sqrt(-2.0 * pc / p.second_derivative(c));
  if (!is_finite(half_split)) return;
  // Keep each root on the side it came from.
  const bool keep = std::abs(r[ij.first] - (c + half_split)) <= std::abs(r[ij.first] - (c - half_split));
  r[ij.first] = keep ? c + half_split : c - half_split;
  r[ij.second] = keep ? c - half_split : c + half_split;
}

}  // namespace detail

/// All roots of a monic polynomial by Aberth-Ehrlich simultaneous iteration.
/// Each approximation stops once its residual reaches the rounding level of the
/// evaluation, so clustered (double) roots come back split by O(sqrt(eps));
/// the closest pair is then re-centred on the critical point between them.
inline RootSet roots(const MonicPolynomial& p, const RootOptions& opts = {}) {
  const std::size_t n = p.degree();
  for (const auto& c : p.coeffs) {
    if (!is_finite(c)) throw ContractViolation("roots: non-finite coefficient");
  }
  RootSet out;
  if (n == 1) {
    out.roots = {-p.coeffs[0]};
    return out;
  }

  // Start on a circle around the centroid, radius from the shifted coefficients.
  const Complex center = -p.coeffs[0] / static_cast<double>(n);
  const auto shifted = detail::taylor_shift(p, center);
  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    radius = std::max(radius, std::pow(std::abs(shifted[k]), 1.0 / static_cast<double>(k)));
  }
  if (radius == 0.0) {
    out.roots.assign(n, center);
    out.pairing = std::pair<std::size_t, std::size_t>{0, 1};
    return out;
  }
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = center + radius * std::polar(1.0, angle);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double stop_factor = 4.0 * static_cast<double>(n + 1) * eps;
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Complex pk = p(z[k]);
      if (std::abs(pk) <= stop_factor * p.magnitude(z[k])) {
        done[k] = true;
        --remaining;
        continue;
      }
      const Complex dpk = p.derivative(z[k]);
      Complex sum{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      Complex step;
      if (dpk == Complex{}) {
        step = Complex{radius * 1e-3, radius * 1e-3};
      } else {
        const Complex ratio = pk / dpk;
        const Complex denom = 1.0 - ratio * sum;
        step = denom == Complex{} ? ratio : ratio / denom;
      }
      z[k] -= step;
      if (!is_finite(z[k])) z[k] = center + radius * std::polar(1.0, 0.7 * static_cast<double>(it + k));
    }
  }
  if (remaining > 0) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(p(z[k])) / p.magnitude(z[k]));
    }
    throw ConvergenceError("Aberth-Ehrlich iteration did not converge (relative residual " +
                               std::to_string(worst) + ")",
                           worst);
  }
  out.roots = std::move(z);
  out.pairing = detail::closest_pair(out.roots, opts.clustering_tol);
  if (out.pairing) detail::polish_pair(p, out.roots, *out.pairing);
  return out;
}

// ---------------------------------------------------------------------------
// Double-root identification

struct DoubleRoot {
  Complex x1;
  std::vector<Complex> simple;
  double separation;  // distance between the two clustered roots
  std::pair<std::size_t, std::size_t> pair;
};

/// Picks the clustered pair as the double root and returns its midpoint.
/// Without a hint the closest pair wins, and an ambiguity error is raised when
/// the runner-up separation is within a factor 2. With a hint, all pairs whose
/// separation lies within that factor (or under the clustering tolerance)
/// compete and the one whose midpoint is nearest the hint wins.
inline DoubleRoot identify_double_root(const RootSet& rs, std::optional<Complex> hint = std::nullopt,
                                       double clustering_tol = RootOptions{}.clustering_tol) {
  const auto& r = rs.roots;
  if (r.size() < 2) throw ContractViolation("identify_double_root needs at least two roots");
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = i + 1; j < r.size(); ++j) pairs.push_back({std::abs(r[i] - r[j]), i, j});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });

  Pair chosen = pairs.front();
  if (!hint) {
    if (pairs.size() > 1 && pairs[1].d < 2.0 * pairs[0].d) {
      throw AmbiguityError("double root ambiguous: closest separations " +
                           std::to_string(pairs[0].d) + " and " + std::to_string(pairs[1].d));
    }
  } else {
    const double window = std::max(2.0 * pairs.front().d, clustering_tol);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pr : pairs) {
      if (pr.d > window) break;
      const double dist = std::abs(0.5 * (r[pr.i] + r[pr.j]) - *hint);
      if (dist < best) {
        best = dist;
        chosen = pr;
      }
    }
  }

  DoubleRoot out{0.5 * (r[chosen.i] + r[chosen.j]), {}, chosen.d, {chosen.i, chosen.j}};
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (k != chosen.i && k != chosen.j) out.simple.push_back(r[k]);
  }
  return out;
}

}  // namespace dblroot
