#pragma once

#include <span>
#include <vector>

#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/polynomial.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

/// Separation below which right-hand sides refuse to evaluate.
inline constexpr double kRhsGuard = 1e-8;

/// z^k for integer k (repeated multiplication; exact for small |k|).
inline Complex ipow(Complex z, int k) {
  if (k < 0) return Complex{1.0, 0.0} / ipow(z, -k);
  Complex acc{1.0, 0.0};
  Complex base = z;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

/// (a^k - b^k) / (a - b) evaluated through its finite geometric sum, so it
/// stays accurate as a approaches b.
inline Complex divided_power(int k, Complex a, Complex b) {
  if (k == 0) return {};
  if (k > 0) {
    // sum_{j=0}^{k-1} a^{k-1-j} b^j
    Complex acc{};
    Complex bj{1.0, 0.0};
    for (int j = 0; j < k; ++j) {
      acc += ipow(a, k - 1 - j) * bj;
      bj *= b;
    }
    return acc;
  }
  if (a == Complex{} || b == Complex{}) {
    throw ContractViolation("divided_power with zero base and negative exponent");
  }
  // -sum_{j=0}^{-k-1} a^{-(j+1)} b^{k+j}
  Complex acc{};
  for (int j = 0; j < -k; ++j) acc -= ipow(a, -(j + 1)) * ipow(b, k + j);
  return acc;
}

namespace detail {

inline void check_sizes(const ModelSpec& spec, std::span<const Complex> x, std::size_t coeff_len) {
  if (x.size() != static_cast<std::size_t>(spec.N())) {
    throw ContractViolation("zero count does not match ModelSpec N");
  }
  if (coeff_len != static_cast<std::size_t>(spec.N() + 1)) {
    throw ContractViolation("coefficient list must have N+1 entries");
  }
}

inline void check_index(const ModelSpec& spec, int n) {
  if (n < 2 || n > spec.N()) throw ContractViolation("simple zero index must be in 2..N");
}

// prod_{l != n} (x_n - x_l) over l = 1..N (0-based index n).
inline Complex product_excluding(std::span<const Complex> x, std::size_t n) {
  Complex p{1.0, 0.0};
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l != n) p *= x[n] - x[l];
  }
  return p;
}

// prod_{l >= 2} (x1 - x_l)
inline Complex product_from_double(std::span<const Complex> x) {
  Complex p{1.0, 0.0};
  for (std::size_t l = 1; l < x.size(); ++l) p *= x[0] - x[l];
  return p;
}

// sum_{m != mbar} c_m * DP(mbar - m, x_n, x1)
inline Complex divided_sum(const ModelSpec& spec, std::span<const Complex> c, Complex xn, Complex x1) {
  Complex s{};
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (m == spec.mbar()) continue;
    s += c[static_cast<std::size_t>(m - 1)] * divided_power(spec.mbar() - m, xn, x1);
  }
  return s;
}

// sum_{m != mbar} (m - mbar) c_m x1^{N-m}
inline Complex weighted_sum(const ModelSpec& spec, std::span<const Complex> c, Complex x1) {
  Complex s{};
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (m == spec.mbar()) continue;
    s += static_cast<double>(m - spec.mbar()) * c[static_cast<std::size_t>(m - 1)] * ipow(x1, spec.N() - m);
  }
  return s;
}

}  // namespace detail

/// First derivative of a simple zero x_n (n = 2..N) from the coefficient
/// velocities; entry mbar of `ydot` is ignored.
inline Complex xdot_simple(int n, std::span<const Complex> x, std::span<const Complex> ydot,
                           const ModelSpec& spec) {
  detail::check_sizes(spec, x, ydot.size());
  detail::check_index(spec, n);
  check_separation(x, kRhsGuard);
  const auto i = static_cast<std::size_t>(n - 1);
  const Complex xn = x[i];
  return -ipow(xn, spec.N() + 1 - spec.mbar()) * detail::divided_sum(spec, ydot, xn, x[0]) /
         detail::product_excluding(x, i);
}

/// First derivative of the double zero x1.
inline Complex xdot_double(std::span<const Complex> x, std::span<const Complex> ydot,
                           const ModelSpec& spec) {
  detail::check_sizes(spec, x, ydot.size());
  check_separation(x, kRhsGuard);
  return detail::weighted_sum(spec, ydot, x[0]) / (2.0 * detail::product_from_double(x));
}

/// Second derivative of the double zero x1 given the zero velocities `v` and
/// the coefficient accelerations `yddot`.
inline Complex xddot_double(std::span<const Complex> x, std::span<const Complex> v,
                            std::span<const Complex> yddot, const ModelSpec& spec) {
  detail::check_sizes(spec, x, yddot.size());
  if (v.size() != x.size()) throw ContractViolation("velocity count does not match N");
  check_separation(x, kRhsGuard);
  const Complex x1 = x[0];
  const Complex v1 = v[0];
  Complex acc = -static_cast<double>(spec.N() + 1 - spec.mbar()) * v1 * v1 / x1;
  Complex pair_sum{};
  for (std::size_t n = 1; n < x.size(); ++n) pair_sum += (2.0 * v[n] + v1) / (x1 - x[n]);
  acc += v1 * pair_sum;
  acc += detail::weighted_sum(spec, yddot, x1) / (2.0 * detail::product_from_double(x));
  return acc;
}

/// Second derivative of a simple zero x_n (n = 2..N).
inline Complex xddot_simple(int n, std::span<const Complex> x, std::span<const Complex> v,
                            std::span<const Complex> yddot, const ModelSpec& spec) {
  detail::check_sizes(spec, x, yddot.size());
  detail::check_index(spec, n);
  if (v.size() != x.size()) throw ContractViolation("velocity count does not match N");
  check_separation(x, kRhsGuard);
  const auto i = static_cast<std::size_t>(n - 1);
  const Complex x1 = x[0];
  const Complex v1 = v[0];
  const Complex xn = x[i];
  const Complex vn = v[i];
  const int power = spec.N() + 1 - spec.mbar();

  Complex acc = 2.0 * v1 * vn / (xn - x1);
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (l != i) acc += 2.0 * vn * v[l] / (xn - x[l]);
  }
  Complex ratio = ipow(xn / x1, power);
  for (std::size_t l = 1; l < x.size(); ++l) {
    if (l != i) ratio *= (x1 - x[l]) / (xn - x[l]);
  }
  acc += 2.0 * v1 * v1 / (xn - x1) * ratio;
  acc -= ipow(xn, power) * detail::divided_sum(spec, yddot, xn, x1) / detail::product_excluding(x, i);
  return acc;
}

/// Coefficient accelerations f_m(ydot_m, y_m) for the evolved indices; entry
/// mbar and frozen (constant) coefficients are zero.
inline std::vector<Complex> coefficient_accelerations(const ModelSpec& spec, std::span<const Complex> y,
                                                      std::span<const Complex> ydot) {
  std::vector<Complex> ydd(static_cast<std::size_t>(spec.N() + 1), Complex{});
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (!spec.evolved(m) || spec.law(m).kind == LawKind::frozen) continue;
    const auto i = static_cast<std::size_t>(m - 1);
    ydd[i] = second_derivative(spec.law(m), y[i], ydot[i]);
  }
  return ydd;
}

/// Accelerations (xdd_1, ..., xdd_N) of the closed Newtonian system satisfied
/// by the zeros when the coefficients obey the laws of `spec`.
inline std::vector<Complex> system_rhs(const ModelSpec& spec, std::span<const Complex> x,
                                       std::span<const Complex> v) {
  if (x.size() != static_cast<std::size_t>(spec.N()) || v.size() != x.size()) {
    throw ContractViolation("system_rhs: state size does not match N");
  }
  check_separation(x, kRhsGuard);
  const auto y = coefficients_from_zeros(x);
  const auto yd = coefficient_velocities_from_zeros(x, v);
  const auto ydd = coefficient_accelerations(spec, y, yd);
  std::vector<Complex> acc(x.size());
  acc[0] = xddot_double(x, v, ydd, spec);
  for (int n = 2; n <= spec.N(); ++n) acc[static_cast<std::size_t>(n - 1)] = xddot_simple(n, x, v, ydd, spec);
  return acc;
}

inline std::vector<Complex> system_rhs(const ModelSpec& spec, const ZeroState& s) {
  return system_rhs(spec, s.positions(), s.velocities());
}

}  // namespace dblroot
