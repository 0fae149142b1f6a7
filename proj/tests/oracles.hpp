#pragma once

// Reference computations for the test suite. None of these call into the
// library's algebra; they recompute the same quantities by other means.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <span>
#include <vector>

#include "dblroot/polynomial.hpp"
#include "dblroot/types.hpp"

namespace oracle {

using dblroot::Complex;

/// Roots with multiplicity: (x1, x1, x2, ..., xN).
inline std::vector<Complex> multiset(std::span<const Complex> x) {
  std::vector<Complex> r{x[0]};
  r.insert(r.end(), x.begin(), x.end());
  return r;
}

/// Elementary symmetric polynomial sigma_m by enumerating all m-subsets.
inline Complex sigma(const std::vector<Complex>& r, int m) {
  const std::size_t n = r.size();
  Complex total{};
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) prod *= r[i];
    }
    total += prod;
  }
  return total;
}

/// y_m = (-1)^m sigma_m over the root multiset, m = 1..N+1.
inline std::vector<Complex> vieta(std::span<const Complex> x) {
  const auto r = multiset(x);
  std::vector<Complex> y;
  for (int m = 1; m <= static_cast<int>(r.size()); ++m) y.push_back((m % 2 ? -1.0 : 1.0) * sigma(r, m));
  return y;
}

/// Centered difference of vieta() along x + t v.
inline std::vector<Complex> vieta_rate(std::span<const Complex> x, std::span<const Complex> v, double h) {
  std::vector<Complex> xp(x.begin(), x.end()), xm(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] += h * v[i];
    xm[i] -= h * v[i];
  }
  const auto yp = vieta(xp), ym = vieta(xm);
  std::vector<Complex> d(yp.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (yp[i] - ym[i]) / (2.0 * h);
  return d;
}

/// (a^k - b^k) / (a - b) as the raw quotient.
inline Complex quotient_power(int k, Complex a, Complex b) {
  return (std::pow(a, static_cast<double>(k)) - std::pow(b, static_cast<double>(k))) / (a - b);
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_abs(std::span<const Complex> a) {
  double d = 0.0;
  for (const auto z : a) d = std::max(d, std::abs(z));
  return d;
}

/// Norm-wise relative difference max|a-b| / max(max|b|, tiny).
inline double rel_diff(std::span<const Complex> a, std::span<const Complex> b) {
  return max_abs_diff(a, b) / std::max(max_abs(b), 1e-300);
}

/// Two-body accelerations written with the coefficient accelerations f_m left
/// symbolic, one formula pair per choice of mbar. `f` is indexed by m.
inline std::vector<Complex> two_body_plugin(int mbar, Complex x1, Complex x2, Complex v1, Complex v2,
                                            const Complex (&f)[4]) {
  switch (mbar) {
    case 3:
      return {(2.0 * v1 * (v1 + 2.0 * v2) - 2.0 * x1 * f[1] - f[2]) / (2.0 * (x1 - x2)),
              (-2.0 * v1 * (v1 + 2.0 * v2) + (x1 + x2) * f[1] + f[2]) / (x1 - x2)};
    case 2:
      return {(2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) - x1 * x1 * f[1] + f[3]) / (2.0 * x1 * (x1 - x2)),
              (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + x1 * x2 * f[1] - f[3]) / (x1 * (x1 - x2))};
    default:
      return {(-2.0 * x1 * v1 * (v1 - 2.0 * v2) + 4.0 * v1 * v1 * x2 + x1 * f[2] + 2.0 * f[3]) /
                  (2.0 * x1 * (x1 - x2)),
              -(2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1) + x1 * x2 * f[2] + (x1 + x2) * f[3]) /
                  (x1 * x1 * (x1 - x2))};
  }
}

/// Random non-degenerate states: components in a disc, pairwise separation
/// and |x1| bounded below.
class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  Complex disc(double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
      const Complex z{u(rng_), u(rng_)};
      if (std::abs(z) <= 1.0) return radius * z;
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::vector<Complex> positions(std::size_t n, double radius = 1.0, double min_sep = 0.1) {
    while (true) {
      std::vector<Complex> x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(disc(radius));
      bool ok = std::abs(x[0]) >= min_sep;
      for (std::size_t i = 0; i < n && ok; ++i) {
        for (std::size_t j = i + 1; j < n && ok; ++j) ok = std::abs(x[i] - x[j]) >= min_sep;
      }
      if (ok) return x;
    }
  }

  dblroot::ZeroState state(std::size_t n, double radius = 1.0, double min_sep = 0.1, double speed = 1.0) {
    auto x = positions(n, radius, min_sep);
    std::vector<Complex> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(disc(speed));
    return dblroot::ZeroState(std::move(x), std::move(v));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Seed for randomized tests; override with DBLROOT_TEST_SEED.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("DBLROOT_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 0x5eed2024u;
}

}  // namespace oracle
