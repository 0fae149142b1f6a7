#pragma once

// Hand-transcribed right-hand sides of the two- and three-body systems in the
// reference catalog, kept independent of the generic transfer formulas in
// zero_dynamics.hpp so the two can cross-check each other.
//
// Six printed forms contain misprints. For those, `printed` keeps the text as
// printed and `corrected` holds the reading confirmed against the degree-3
// plug-in formulas; the erratum string says what differs.

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dblroot/coefficient_dynamics.hpp"
#include "dblroot/rational.hpp"
#include "dblroot/types.hpp"

namespace dblroot::printed {

/// Parameters of a printed system. r[m] is the rational attached to
/// coefficient m (index 0 unused); systems written with a single r use `r`.
struct Params {
  double omega = 0.0;
  Rational rm[5] = {Rational{1}, Rational{1}, Rational{1}, Rational{1}, Rational{1}};
  Rational r{1};
  double a = 0.0;

  friend bool operator==(const Params&, const Params&) = default;
};

using Rhs = std::vector<Complex> (*)(const Params&, std::span<const Complex>, std::span<const Complex>);

struct System {
  std::string id;
  int N;
  int mbar;
  /// Law kind per evolved coefficient index.
  std::map<int, LawKind> kinds;
  /// True when every law uses the common `Params::r`.
  bool single_r;
  Rhs printed;
  Rhs corrected;  // nullptr when the printed form is already consistent
  std::string erratum;

  Rhs rhs() const { return corrected ? corrected : printed; }
};

namespace detail {

struct Vars2 {
  Complex x1, x2, v1, v2;
  double w;
};

inline Vars2 unpack2(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  return {x[0], x[1], v[0], v[1], p.omega};
}

inline double rv(const Params& p, int m) { return p.rm[m].value(); }

// ---- linear-velocity laws, two bodies -------------------------------------

inline std::vector<Complex> s311(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r1 = rv(p, 1), r2 = rv(p, 2);
  const Complex a1 = (v1 * (-kI * r2 * w * x2 + v1 + 2.0 * v2) +
                      kI * w * x1 * ((2.0 * r1 - r2) * v1 + (r1 - r2) * v2)) /
                     (x1 - x2);
  const Complex a2 = -kI / (x1 - x2) *
                     (-2.0 * kI * v1 * (v1 + 2.0 * v2) + w * x2 * (2.0 * (r1 - r2) * v1 + r1 * v2) +
                      w * x1 * (2.0 * (r1 - r2) * v1 + (r1 - 2.0 * r2) * v2));
  return {a1, a2};
}

inline std::vector<Complex> s312(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r1 = rv(p, 1), r3 = rv(p, 3);
  const Complex a1 = (2.0 * x2 * v1 * v1 + 2.0 * x1 * v1 * (-kI * r3 * w * x2 + 2.0 * v2) +
                      kI * w * x1 * x1 * (2.0 * r1 * v1 + (r1 - r3) * v2)) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = kI / (x1 * (x1 - x2)) *
                     (2.0 * kI * x2 * v1 * v1 + r3 * w * x1 * x1 * v2 + 4.0 * kI * x1 * v1 * v2 -
                      w * x1 * x2 * (2.0 * (r1 - r3) * v1 + r1 * v2));
  return {a1, a2};
}

inline std::vector<Complex> s313(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r2 = rv(p, 2), r3 = rv(p, 3);
  const Complex a1 = kI / (x1 * (x1 - x2)) *
                     (-2.0 * kI * x2 * v1 * v1 + x1 * v1 * ((r2 - 2.0 * r3) * w * x2 + kI * (v1 - 2.0 * v2)) +
                      w * x1 * x1 * (r2 * v1 + (r2 - r3) * v2));
  const Complex a2 = kI / (x1 * x1 * (x1 - x2)) *
                     (2.0 * (-r2 + r3) * w * x1 * x2 * x2 * v1 + 2.0 * kI * x2 * x2 * v1 * v1 +
                      r3 * w * x1 * x1 * x1 * v2 + 4.0 * kI * x1 * x1 * v1 * v2 +
                      w * x1 * x1 * x2 * (-2.0 * (r2 - r3) * v1 + (-2.0 * r2 + r3) * v2));
  return {a1, a2};
}

// Equal-r simplifications.
inline std::vector<Complex> s313a(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r = p.r.value();
  return {v1 * (v1 + 2.0 * v2) / (x1 - x2) + kI * w * r * v1,
          -2.0 * v1 * (v1 + 2.0 * v2) / (x1 - x2) + kI * w * r * v2};
}

inline std::vector<Complex> s313b(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r = p.r.value();
  return {v1 * (v1 * x2 + 2.0 * v2 * x1) / (x1 * (x1 - x2)) + kI * w * r * v1,
          -2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) / (x1 * (x1 - x2)) + kI * w * r * v2};
}

inline std::vector<Complex> s313c(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r = p.r.value();
  return {-v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1) / (x1 * (x1 - x2)) + kI * w * r * v1,
          -2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1) / (x1 * x1 * (x1 - x2)) + kI * w * r * v2};
}

// ---- harmonic laws, two bodies -------------------------------------------

inline std::vector<Complex> s321(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q1 = rv(p, 1) * rv(p, 1), q2 = rv(p, 2) * rv(p, 2);
  const Complex a1 = (w * w * x1 * ((-4.0 * q1 + q2) * x1 + 2.0 * (-q1 + q2) * x2) + 2.0 * v1 * (v1 + 2.0 * v2)) /
                     (2.0 * (x1 - x2));
  const Complex a2 = (w * w * x1 * ((2.0 * q1 - q2) * x1 + (3.0 * q1 - 2.0 * q2) * x2) + q1 * w * w * x2 * x2 +
                      2.0 * v1 * (v1 + 2.0 * v2)) /
                     (x1 - x2);
  return {a1, a2};
}

inline std::vector<Complex> s321_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q1 = rv(p, 1) * rv(p, 1), q2 = rv(p, 2) * rv(p, 2);
  auto out = s321(p, x, v);
  out[1] = (w * w * x1 * ((2.0 * q1 - q2) * x1 + (3.0 * q1 - 2.0 * q2) * x2) + q1 * w * w * x2 * x2 -
            2.0 * v1 * (v1 + 2.0 * v2)) /
           (x1 - x2);
  return out;
}

inline std::vector<Complex> s322(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q1 = rv(p, 1) * rv(p, 1), q3 = rv(p, 3) * rv(p, 3);
  const Complex a1 = (w * w * x1 * x1 * (-2.0 * q1 * x1 + (-q1 + q3) * x2) + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (w * w * x1 * x2 * (q3 * x1 - q1 * (2.0 * x1 + x2)) + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) /
                     (x1 * (x1 - x2));
  return {a1, a2};
}

inline std::vector<Complex> s322_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q1 = rv(p, 1) * rv(p, 1), q3 = rv(p, 3) * rv(p, 3);
  auto out = s322(p, x, v);
  out[1] = (w * w * x1 * x2 * (q1 * (2.0 * x1 + x2) - q3 * x1) - 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) /
           (x1 * (x1 - x2));
  return out;
}

inline std::vector<Complex> s323(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q2 = rv(p, 2) * rv(p, 2), q3 = rv(p, 3) * rv(p, 3);
  const Complex a1 = (w * w * x1 * x1 * (-q2 * x1 + 2.0 * (-q2 + q3) * x2) +
                      2.0 * v1 * (2.0 * x2 * v1 - x1 * (v1 - 2.0 * v2))) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (w * w * x1 * x1 * x2 * ((q2 - q3) * x1 + (2.0 * q2 - q3) * x2) -
                      2.0 * v1 * (x2 * x2 * v1 + 2.0 * x1 * x1 * v2)) /
                     (x1 * x1 * (x1 - x2));
  return {a1, a2};
}

inline std::vector<Complex> s322a(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  return {(-3.0 * w * w * q * x1 * x1 + 2.0 * v1 * (v1 + 2.0 * v2)) / (2.0 * (x1 - x2)),
          (w * w * q * (x1 * x1 + x1 * x2 + x2 * x2) + 2.0 * v1 * (v1 + 2.0 * v2)) / (x1 - x2)};
}

inline std::vector<Complex> s322a_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  auto out = s322a(p, x, v);
  out[1] = (w * w * q * (x1 * x1 + x1 * x2 + x2 * x2) - 2.0 * v1 * (v1 + 2.0 * v2)) / (x1 - x2);
  return out;
}

inline std::vector<Complex> s322b(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  return {(-2.0 * w * w * q * x1 * x1 * x1 + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) / (2.0 * x1 * (x1 - x2)),
          (w * w * q * x1 * x2 * (x2 - x1) + 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) / (x1 * (x1 - x2))};
}

inline std::vector<Complex> s322b_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  auto out = s322b(p, x, v);
  out[1] = (w * w * q * x1 * x2 * (x1 + x2) - 2.0 * v1 * (x2 * v1 + 2.0 * x1 * v2)) / (x1 * (x1 - x2));
  return out;
}

inline std::vector<Complex> s322c(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  return {(-w * w * q * x1 * x1 * x1 + 2.0 * v1 * (2.0 * x2 * v1 - x1 * v1 + 2.0 * x1 * v2)) / (2.0 * x1 * (x1 - x2)),
          (w * w * q * x1 * x1 * x2 * x2 - 2.0 * v1 * (x2 * x2 * v1 + 2.0 * x1 * x1 * v2)) / (x1 * x1 * (x1 - x2))};
}

// ---- mixed harmonic / linear-velocity laws --------------------------------

inline std::vector<Complex> s331(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r1 = rv(p, 1), r2 = rv(p, 2);
  const Complex g = v1 * (x1 + x2) + v2 * x1;
  const Complex a1 =
      (v1 * (v1 + 2.0 * v2) - r1 * r1 * w * w * x1 * (2.0 * x1 + x2) - kI * r2 * w * g) / (x1 - x2);
  const Complex a2 = (-2.0 * v1 * (v1 + 2.0 * v2) + r1 * r1 * w * w * (x1 + x2) * (2.0 * x1 + x2) +
                      2.0 * kI * r2 * w * g) /
                     (x1 - x2);
  return {a1, a2};
}

inline std::vector<Complex> s332(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r1 = rv(p, 1), r3 = rv(p, 3);
  const Complex g = 2.0 * v1 * x2 + v2 * x1;
  const Complex a1 = (2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) - r1 * r1 * w * w * x1 * x1 * (2.0 * x1 + x2) -
                      kI * r3 * w * x1 * g) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + r1 * r1 * w * w * x1 * x2 * (2.0 * x1 + x2) +
                      kI * r3 * w * x1 * g) /
                     (x1 * (x1 - x2));
  return {a1, a2};
}

inline std::vector<Complex> s333(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r2 = rv(p, 2), r3 = rv(p, 3);
  const Complex g = 2.0 * v1 * x2 + v2 * x1;
  const Complex a1 = -(2.0 * v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1) +
                       r2 * r2 * w * w * x1 * x1 * (x1 + 2.0 * x2) + 2.0 * kI * r3 * w * x1 * g) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (-2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1) +
                      r2 * r2 * w * w * x1 * x1 * x2 * (x1 + 2.0 * x2) + kI * r3 * w * x1 * (x1 + x2) * g) /
                     (x1 * x1 * (x1 - x2));
  return {a1, a2};
}

// ---- harmonic / damped laws -----------------------------------------------

inline std::vector<Complex> s341(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  const double a = p.a;
  const Complex g = v1 * (x1 + x2) + v2 * x1;
  const Complex a1 = (v1 * (v1 + 2.0 * v2) - q * w * w * x1 * (2.0 * x1 + x2) + a * g) / (x1 - x2);
  const Complex a2 =
      (2.0 * v1 * (v1 + 2.0 * v2) + q * w * w * (x1 + x2) * (2.0 * x1 + x2) - 2.0 * a * g) / (x1 - x2);
  return {a1, a2};
}

inline std::vector<Complex> s341_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  const Complex g = v1 * (x1 + x2) + v2 * x1;
  auto out = s341(p, x, v);
  out[1] = (-2.0 * v1 * (v1 + 2.0 * v2) + q * w * w * (x1 + x2) * (2.0 * x1 + x2) - 2.0 * p.a * g) / (x1 - x2);
  return out;
}

inline std::vector<Complex> s342(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r = p.r.value();
  const double a = p.a;
  const Complex g = 2.0 * v1 * x2 + v2 * x1;
  const Complex a1 = (2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) - r * r * w * w * x1 * x1 * (2.0 * x1 + x2) + a * x1 * g) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + r * w * w * x1 * x2 * (2.0 * x1 + x2) - a * x1 * g) /
                     (x1 * (x1 - x2));
  return {a1, a2};
}

inline std::vector<Complex> s342_fixed(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double r = p.r.value();
  const Complex g = 2.0 * v1 * x2 + v2 * x1;
  auto out = s342(p, x, v);
  out[1] = (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + r * r * w * w * x1 * x2 * (2.0 * x1 + x2) - p.a * x1 * g) /
           (x1 * (x1 - x2));
  return out;
}

inline std::vector<Complex> s343(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const auto [x1, x2, v1, v2, w] = unpack2(p, x, v);
  const double q = p.r.value() * p.r.value();
  const double a = p.a;
  const Complex g = 2.0 * v1 * x2 + v2 * x1;
  const Complex a1 = (-2.0 * v1 * (v1 * (x1 - 2.0 * x2) - 2.0 * v2 * x1) - q * w * w * x1 * x1 * (x1 + 2.0 * x2) +
                      2.0 * a * x1 * g) /
                     (2.0 * x1 * (x1 - x2));
  const Complex a2 = (-2.0 * v1 * (v1 * x2 * x2 + 2.0 * v2 * x1 * x1) + q * w * w * x1 * x1 * x2 * (x1 + 2.0 * x2) -
                      a * x1 * (x1 + x2) * g) /
                     (x1 * x1 * (x1 - x2));
  return {a1, a2};
}

// ---- three bodies, harmonic laws, any mbar --------------------------------

template <int Mbar>
std::vector<Complex> s35(const Params& p, std::span<const Complex> x, std::span<const Complex> v) {
  const Complex x1 = x[0], x2 = x[1], x3 = x[2];
  const Complex v1 = v[0], v2 = v[1], v3 = v[2];
  const double w = p.omega;
  const Complex y[5] = {Complex{},
                        -(2.0 * x1 + x2 + x3),
                        x1 * x1 + 2.0 * x1 * x2 + 2.0 * x1 * x3 + x2 * x3,
                        -(x1 * x1 * x2 + x1 * x1 * x3 + 2.0 * x1 * x2 * x3),
                        x1 * x1 * x2 * x3};
  auto pw = [](Complex z, int k) {
    Complex acc{1.0, 0.0};
    for (int i = 0; i < (k < 0 ? -k : k); ++i) acc *= z;
    return k < 0 ? 1.0 / acc : acc;
  };
  auto q = [&](int m) { return rv(p, m) * rv(p, m); };

  Complex s1{};
  for (int m = 1; m <= 4; ++m) {
    if (m == Mbar) continue;
    s1 += static_cast<double>(m - Mbar) * q(m) * w * w * pw(x1, 3 - m) * y[m];
  }
  const Complex a1 = -static_cast<double>(4 - Mbar) * v1 * v1 / x1 + v1 * (2.0 * v2 + v1) / (x1 - x2) +
                     v1 * (2.0 * v3 + v1) / (x1 - x3) - s1 / (2.0 * (x1 - x2) * (x1 - x3));

  auto simple = [&](Complex xn, Complex vn, Complex xo, Complex vo, double sign_pair) {
    Complex s{};
    for (int m = 1; m <= 4; ++m) {
      if (m == Mbar) continue;
      s += q(m) * w * w * y[m] * ((pw(xn, Mbar - m) - pw(x1, Mbar - m)) / (xn - x1));
    }
    return sign_pair * 2.0 * vn * vo / (x2 - x3) +
           2.0 * v1 / (xn - x1) * (2.0 * vn + pw(xn / x1, 4 - Mbar) * ((x1 - xo) / (xn - xo)) * v1) +
           pw(xn, 4 - Mbar) / ((xn - x1) * (xn - xo)) * s;
  };
  const Complex a2 = simple(x2, v2, x3, v3, 1.0);
  const Complex a3 = simple(x3, v3, x2, v2, -1.0);
  return {a1, a2, a3};
}

}  // namespace detail

/// The full catalog: 16 systems and the 6 equal-r simplifications.
inline const std::vector<System>& catalog() {
  using K = LawKind;
  static const std::vector<System> systems = {
      {"3.1.1", 2, 3, {{1, K::linear_velocity}, {2, K::linear_velocity}}, false, detail::s311, nullptr, ""},
      {"3.1.2", 2, 2, {{1, K::linear_velocity}, {3, K::linear_velocity}}, false, detail::s312, nullptr, ""},
      {"3.1.3", 2, 1, {{2, K::linear_velocity}, {3, K::linear_velocity}}, false, detail::s313, nullptr, ""},
      {"3.2.1", 2, 3, {{1, K::harmonic}, {2, K::harmonic}}, false, detail::s321, detail::s321_fixed,
       "xdd2: velocity term printed as +2 xd1 (xd1 + 2 xd2); the consistent sign is -2"},
      {"3.2.2", 2, 2, {{1, K::harmonic}, {3, K::harmonic}}, false, detail::s322, detail::s322_fixed,
       "xdd2: numerator printed with the opposite overall sign"},
      {"3.2.3", 2, 1, {{2, K::harmonic}, {3, K::harmonic}}, false, detail::s323, nullptr, ""},
      {"3.3.1", 2, 3, {{1, K::harmonic}, {2, K::linear_velocity}}, false, detail::s331, nullptr, ""},
      {"3.3.2", 2, 2, {{1, K::harmonic}, {3, K::linear_velocity}}, false, detail::s332, nullptr, ""},
      {"3.3.3", 2, 1, {{2, K::harmonic}, {3, K::linear_velocity}}, false, detail::s333, nullptr, ""},
      {"3.4.1", 2, 3, {{1, K::harmonic}, {2, K::damped}}, true, detail::s341, detail::s341_fixed,
       "xdd2: velocity term printed as +2 xd1 (xd1 + 2 xd2); the consistent sign is -2"},
      {"3.4.2", 2, 2, {{1, K::harmonic}, {3, K::damped}}, true, detail::s342, detail::s342_fixed,
       "xdd2: factor printed as r omega^2; the consistent factor is r^2 omega^2"},
      {"3.4.3", 2, 1, {{2, K::harmonic}, {3, K::damped}}, true, detail::s343, nullptr, ""},
      {"3.5.1", 3, 4, {{1, K::harmonic}, {2, K::harmonic}, {3, K::harmonic}}, false, detail::s35<4>, nullptr, ""},
      {"3.5.2", 3, 3, {{1, K::harmonic}, {2, K::harmonic}, {4, K::harmonic}}, false, detail::s35<3>, nullptr, ""},
      {"3.5.3", 3, 2, {{1, K::harmonic}, {3, K::harmonic}, {4, K::harmonic}}, false, detail::s35<2>, nullptr, ""},
      {"3.5.4", 3, 1, {{2, K::harmonic}, {3, K::harmonic}, {4, K::harmonic}}, false, detail::s35<1>, nullptr, ""},
      {"3.1.1-equal-r", 2, 3, {{1, K::linear_velocity}, {2, K::linear_velocity}}, true, detail::s313a, nullptr, ""},
      {"3.1.2-equal-r", 2, 2, {{1, K::linear_velocity}, {3, K::linear_velocity}}, true, detail::s313b, nullptr, ""},
      {"3.1.3-equal-r", 2, 1, {{2, K::linear_velocity}, {3, K::linear_velocity}}, true, detail::s313c, nullptr, ""},
      {"3.2.1-equal-r", 2, 3, {{1, K::harmonic}, {2, K::harmonic}}, true, detail::s322a, detail::s322a_fixed,
       "xdd2: velocity term printed as +2 xd1 (xd1 + 2 xd2); the consistent sign is -2"},
      {"3.2.2-equal-r", 2, 2, {{1, K::harmonic}, {3, K::harmonic}}, true, detail::s322b, detail::s322b_fixed,
       "xdd2: printed omega^2 r^2 x1 x2 (x2 - x1) + 2 xd1 (...); the consistent numerator is "
       "omega^2 r^2 x1 x2 (x1 + x2) - 2 xd1 (...)"},
      {"3.2.3-equal-r", 2, 1, {{2, K::harmonic}, {3, K::harmonic}}, true, detail::s322c, nullptr, ""},
  };
  return systems;
}

inline const System& find(std::string_view id) {
  const auto& all = catalog();
  const auto it = std::find_if(all.begin(), all.end(), [&](const System& s) { return s.id == id; });
  if (it == all.end()) throw ContractViolation("unknown printed system '" + std::string(id) + "'");
  return *it;
}

/// The generic model equivalent to a printed system with the given parameters.
inline ModelSpec model_spec(const System& sys, const Params& p) {
  std::map<int, CoefficientLaw> laws;
  for (const auto& [m, kind] : sys.kinds) {
    const Rational r = sys.single_r ? p.r : p.rm[m];
    switch (kind) {
      case LawKind::linear_velocity: laws[m] = CoefficientLaw::linear_velocity(r, p.omega); break;
      case LawKind::harmonic: laws[m] = CoefficientLaw::harmonic(r, p.omega); break;
      case LawKind::damped: laws[m] = CoefficientLaw::damped(p.a); break;
      case LawKind::frozen: laws[m] = CoefficientLaw::frozen(); break;
    }
  }
  return ModelSpec(sys.N, sys.mbar, laws);
}

}  // namespace dblroot::printed
