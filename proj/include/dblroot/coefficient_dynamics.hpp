#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dblroot/rational.hpp"
#include "dblroot/types.hpp"

namespace dblroot {

enum class LawKind { linear_velocity, harmonic, damped, frozen };

inline const char* to_string(LawKind k) {
  switch (k) {
    case LawKind::linear_velocity: return "linear_velocity";
    case LawKind::harmonic: return "harmonic";
    case LawKind::damped: return "damped";
    case LawKind::frozen: return "frozen";
  }
  return "?";
}

/// Closed-form solvable second-order law for one coefficient:
///   linear_velocity  ydd = i r omega yd
///   harmonic         ydd = -r^2 omega^2 y
///   damped           ydd = -a yd
///   frozen           not evolved (the reconstructed coefficient, or a constant one)
struct CoefficientLaw {
  LawKind kind = LawKind::frozen;
  Rational r{1};
  double omega = 0.0;
  double a = 0.0;

  static CoefficientLaw linear_velocity(Rational r, double omega) {
    if (r.is_zero()) throw ContractViolation("linear_velocity law needs r != 0");
    if (!(omega != 0.0) || !std::isfinite(omega)) throw ContractViolation("law needs finite omega != 0");
    return {LawKind::linear_velocity, r, omega, 0.0};
  }
  static CoefficientLaw harmonic(Rational r, double omega) {
    if (r.is_zero()) throw ContractViolation("harmonic law needs r != 0");
    if (!(omega != 0.0) || !std::isfinite(omega)) throw ContractViolation("law needs finite omega != 0");
    return {LawKind::harmonic, r, omega, 0.0};
  }
  static CoefficientLaw damped(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ContractViolation("damped law needs a > 0");
    return {LawKind::damped, Rational{1}, 0.0, a};
  }
  static CoefficientLaw frozen() { return {}; }

  bool is_periodic() const { return kind == LawKind::linear_velocity || kind == LawKind::harmonic; }

  friend bool operator==(const CoefficientLaw&, const CoefficientLaw&) = default;
};

struct FlowState {
  Complex y;
  Complex ydot;
};

/// Exact state of one coefficient at time t, started from (y0, ydot0) at t = 0.
inline FlowState flow(const CoefficientLaw& law, Complex y0, Complex ydot0, double t) {
  switch (law.kind) {
    case LawKind::linear_velocity: {
      const Complex lambda = kI * (law.r.value() * law.omega);
      const Complex e = std::exp(lambda * t);
      return {y0 + ydot0 * (e - 1.0) / lambda, ydot0 * e};
    }
    case LawKind::harmonic: {
      const double k = law.r.value() * law.omega;
      const double c = std::cos(k * t);
      const double s = std::sin(k * t);
      return {y0 * c + ydot0 * (s / k), -y0 * (k * s) + ydot0 * c};
    }
    case LawKind::damped: {
      const double decay = std::exp(-law.a * t);
      return {y0 + ydot0 * (-std::expm1(-law.a * t) / law.a), ydot0 * decay};
    }
    case LawKind::frozen:
      if (ydot0 != Complex{}) throw ContractViolation("frozen coefficient with nonzero velocity");
      return {y0, Complex{}};
  }
  return {y0, ydot0};
}

inline Complex second_derivative(const CoefficientLaw& law, Complex y, Complex ydot) {
  switch (law.kind) {
    case LawKind::linear_velocity: return kI * (law.r.value() * law.omega) * ydot;
    case LawKind::harmonic: {
      const double k = law.r.value() * law.omega;
      return -(k * k) * y;
    }
    case LawKind::damped: return -law.a * ydot;
    case LawKind::frozen: break;
  }
  throw ContractViolation("second_derivative of a frozen coefficient");
}

/// Degree parameter N, the reconstructed index mbar, and one law per evolved
/// coefficient. Laws are stored by coefficient index m = 1..N+1; slot mbar
/// holds a frozen marker.
class ModelSpec {
 public:
  ModelSpec(int N, int mbar, const std::map<int, CoefficientLaw>& laws) : N_(N), mbar_(mbar) {
    if (N < 2) throw ContractViolation("ModelSpec needs N >= 2");
    if (mbar < 1 || mbar > N + 1) throw ContractViolation("ModelSpec needs 1 <= mbar <= N+1");
    laws_.assign(static_cast<std::size_t>(N + 1), CoefficientLaw::frozen());
    for (const auto& [m, law] : laws) {
      if (m < 1 || m > N + 1) throw ContractViolation("law index out of range: " + std::to_string(m));
      if (m == mbar) throw ContractViolation("mbar must not carry a law");
      laws_[static_cast<std::size_t>(m - 1)] = law;
    }
    if (laws.size() != static_cast<std::size_t>(N)) {
      throw ContractViolation("ModelSpec needs exactly N laws (one per m != mbar)");
    }
    for (const auto& law : laws_) {
      if (!law.is_periodic()) continue;
      if (!omega_) omega_ = law.omega;
      else if (*omega_ != law.omega) omega_shared_ = false;
    }
  }

  int N() const { return N_; }
  int mbar() const { return mbar_; }
  /// Law of coefficient m (1-based).
  const CoefficientLaw& law(int m) const { return laws_.at(static_cast<std::size_t>(m - 1)); }
  const std::vector<CoefficientLaw>& laws() const { return laws_; }
  bool evolved(int m) const { return m != mbar_; }

  /// Common angular frequency of the periodic laws, if they share one.
  std::optional<double> omega() const {
    if (!omega_shared_) return std::nullopt;
    return omega_;
  }
  /// T = 2 pi / |omega|.
  std::optional<double> basic_period() const {
    auto w = omega();
    if (!w) return std::nullopt;
    return 2.0 * std::numbers::pi / std::abs(*w);
  }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  int N_;
  int mbar_;
  std::vector<CoefficientLaw> laws_;
  std::optional<double> omega_;
  bool omega_shared_ = true;
};

/// Coefficient values and velocities at time t; index mbar is derived, not evolved.
struct CoefficientState {
  std::vector<Complex> y;
  std::vector<Complex> ydot;
  double t = 0.0;
};

/// Evolves every coefficient m != mbar from `initial` (taken at t = 0) to t.
/// Entry mbar is copied through untouched.
inline CoefficientState evolve(const ModelSpec& spec, const CoefficientState& initial, double t) {
  CoefficientState out{initial.y, initial.ydot, t};
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (!spec.evolved(m)) continue;
    const auto i = static_cast<std::size_t>(m - 1);
    const auto fs = flow(spec.law(m), initial.y[i], initial.ydot[i], t);
    out.y[i] = fs.y;
    out.ydot[i] = fs.ydot;
  }
  return out;
}

namespace detail {

inline std::optional<Rational> period_multiple_impl(const ModelSpec& spec, bool skip_damped) {
  if (!spec.omega()) return std::nullopt;
  std::optional<Rational> acc;
  for (int m = 1; m <= spec.N() + 1; ++m) {
    if (!spec.evolved(m)) continue;
    const auto& law = spec.law(m);
    if (law.kind == LawKind::damped) {
      if (skip_damped) continue;
      return std::nullopt;
    }
    if (!law.is_periodic()) continue;
    // Each periodic law repeats after T / |r|.
    const Rational own{law.r.den(), law.r.abs().num()};
    acc = acc ? lcm(*acc, own) : own;
  }
  return acc;
}

}  // namespace detail

/// Minimal common period of all coefficient flows as an exact multiple of
/// T = 2 pi / |omega|; none when a damped law is present.
inline std::optional<Rational> period_multiple(const ModelSpec& spec) {
  return detail::period_multiple_impl(spec, false);
}

/// Period of the regime approached as t grows: damped laws settle to constants
/// and are ignored.
inline std::optional<Rational> asymptotic_period_multiple(const ModelSpec& spec) {
  return detail::period_multiple_impl(spec, true);
}

inline std::optional<double> minimal_period(const ModelSpec& spec) {
  const auto k = period_multiple(spec);
  if (!k) return std::nullopt;
  return k->value() * *spec.basic_period();
}

}  // namespace dblroot
