#include <gtest/gtest.h>

#include "dblroot/printed_systems.hpp"
#include "dblroot/zero_dynamics.hpp"
#include "oracles.hpp"

using namespace dblroot;

namespace {

Rational random_rate(oracle::StateSampler& rng) {
  const auto p = static_cast<std::int64_t>(rng.uniform(1.0, 5.0));
  const auto q = static_cast<std::int64_t>(rng.uniform(1.0, 5.0));
  return {rng.uniform(0.0, 1.0) < 0.5 ? -p : p, q};
}

// Any valid model; laws do not matter for the transfer formulas.
ModelSpec any_model(int N, int mbar) {
  std::map<int, CoefficientLaw> laws;
  for (int m = 1; m <= N + 1; ++m) {
    if (m != mbar) laws[m] = CoefficientLaw::harmonic(Rational{m}, 1.0);
  }
  return ModelSpec(N, mbar, laws);
}

// Second t-derivative of the Vieta coefficients along x + v t + a t^2 / 2.
std::vector<Complex> vieta_acceleration(std::span<const Complex> x, std::span<const Complex> v,
                                        std::span<const Complex> a, double h) {
  auto at = [&](double t) {
    std::vector<Complex> xt(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xt[i] = x[i] + v[i] * t + 0.5 * a[i] * t * t;
    return oracle::vieta(xt);
  };
  const auto yp = at(h), y0 = at(0.0), ym = at(-h);
  std::vector<Complex> d(y0.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (yp[i] - 2.0 * y0[i] + ym[i]) / (h * h);
  return d;
}

printed::Params random_params(oracle::StateSampler& rng) {
  printed::Params p;
  p.omega = rng.uniform(0.5, 7.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  for (int m = 1; m <= 4; ++m) p.rm[m] = random_rate(rng);
  p.r = random_rate(rng);
  p.a = rng.uniform(0.05, 2.0);
  return p;
}

}  // namespace

TEST(DividedPower, SmallCases) {
  const Complex a{0.3, 1.1}, b{-0.7, 0.2};
  EXPECT_LT(std::abs(divided_power(2, a, b) - (a + b)), 1e-15);
  EXPECT_LT(std::abs(divided_power(3, a, b) - (a * a + a * b + b * b)), 1e-15);
  EXPECT_EQ(divided_power(0, a, b), Complex{});
  EXPECT_LT(std::abs(divided_power(-1, 2.0, 4.0) - Complex{-0.125, 0.0}), 1e-16);
  EXPECT_LT(std::abs(oracle::quotient_power(-1, 2.0, 4.0) - Complex{-0.125, 0.0}), 1e-16);
  EXPECT_THROW(divided_power(-2, 0.0, 1.0), ContractViolation);
  EXPECT_NO_THROW(divided_power(2, 0.0, 1.0));
}

TEST(DividedPower, MatchesQuotientAwayFromDiagonal) {
  oracle::StateSampler rng(oracle::test_seed());
  int checked = 0;
  while (checked < 200) {
    const Complex a = rng.disc(2.0), b = rng.disc(2.0);
    if (std::abs(a - b) < 1e-3 || std::abs(a) < 0.1 || std::abs(b) < 0.1) continue;
    for (int k = -6; k <= 6; ++k) {
      const Complex lhs = divided_power(k, a, b) * (a - b);
      const Complex rhs = std::pow(a, static_cast<double>(k)) - std::pow(b, static_cast<double>(k));
      const double scale = std::max({std::abs(std::pow(a, static_cast<double>(k))),
                                     std::abs(std::pow(b, static_cast<double>(k))), 1e-300});
      EXPECT_LT(std::abs(lhs - rhs) / scale, 1e-12) << "k=" << k;
    }
    ++checked;
  }
}

TEST(DividedPower, ContinuousAcrossDiagonal) {
  // At a = b the divided power is the derivative k a^{k-1}.
  const Complex a{0.8, -0.6};
  for (int k = -5; k <= 5; ++k) {
    const Complex expected = static_cast<double>(k) * std::pow(a, static_cast<double>(k - 1));
    EXPECT_LT(std::abs(divided_power(k, a, a * (1.0 + 1e-13)) - expected), 1e-11) << "k=" << k;
  }
}

TEST(FirstDerivatives, TwoBodyClosedForms) {
  oracle::StateSampler rng(oracle::test_seed() + 1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = rng.positions(2);
    const Complex x1 = x[0], x2 = x[1];
    std::vector<Complex> yd{rng.disc(1.0), rng.disc(1.0), rng.disc(1.0)};
    const auto m3 = any_model(2, 3), m2 = any_model(2, 2), m1 = any_model(2, 1);
    EXPECT_LT(std::abs(xdot_simple(2, x, yd, m3) - (yd[0] * (x1 + x2) + yd[1]) / (x1 - x2)), 1e-12);
    EXPECT_LT(std::abs(xdot_simple(2, x, yd, m1) +
                       (x1 * x2 * yd[1] + (x1 + x2) * yd[2]) / (x1 * x1 * (x1 - x2))),
              1e-10);
    EXPECT_LT(std::abs(xdot_double(x, yd, m3) + (2.0 * x1 * yd[0] + yd[1]) / (2.0 * (x1 - x2))), 1e-12);
    EXPECT_LT(std::abs(xdot_double(x, yd, m2) + (x1 * x1 * yd[0] - yd[2]) / (2.0 * x1 * (x1 - x2))), 1e-10);
  }
}

TEST(FirstDerivatives, IgnoreTheReconstructedEntry) {
  const std::vector<Complex> x{{1.0, 0.5}, {-0.5, 0.2}};
  const auto spec = any_model(2, 2);
  std::vector<Complex> yd{0.3, 0.0, -0.4};
  const auto base = xdot_double(x, yd, spec);
  yd[1] = {100.0, 100.0};
  EXPECT_EQ(xdot_double(x, yd, spec), base);
}

TEST(FirstDerivatives, VanishWithoutCoefficientMotion) {
  const std::vector<Complex> x{{1.0, 0.5}, {-0.5, 0.2}, {0.1, -0.9}};
  const std::vector<Complex> yd(4);
  for (int mbar = 1; mbar <= 4; ++mbar) {
    const auto spec = any_model(3, mbar);
    EXPECT_EQ(xdot_double(x, yd, spec), Complex{});
    for (int n = 2; n <= 3; ++n) EXPECT_EQ(xdot_simple(n, x, yd, spec), Complex{});
  }
}

// The first-derivative formulas invert the Vieta velocity map.
TEST(FirstDerivatives, RecoverZeroVelocities) {
  oracle::StateSampler rng(oracle::test_seed() + 2);
  for (int N = 2; N <= 5; ++N) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = rng.state(static_cast<std::size_t>(N));
      const auto yd = oracle::vieta_rate(s.positions(), s.velocities(), 1e-6);
      const int mbar = 1 + trial % (N + 1);
      const auto spec = any_model(N, mbar);
      const double scale = std::max(1.0, oracle::max_abs(s.velocities()));
      EXPECT_LT(std::abs(xdot_double(s.positions(), yd, spec) - s.v1()), 1e-5 * scale)
          << "N=" << N << " mbar=" << mbar;
      for (int n = 2; n <= N; ++n) {
        EXPECT_LT(std::abs(xdot_simple(n, s.positions(), yd, spec) - s.velocities()[n - 1]), 1e-5 * scale)
            << "N=" << N << " mbar=" << mbar << " n=" << n;
      }
    }
  }
}

TEST(SecondDerivatives, TwoBodyClosedForms) {
  oracle::StateSampler rng(oracle::test_seed() + 3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = rng.state(2);
    const Complex x1 = s.x1(), x2 = s.positions()[1], v1 = s.v1(), v2 = s.velocities()[1];
    const std::vector<Complex> f{rng.disc(1.0), rng.disc(1.0), rng.disc(1.0)};
    const auto m3 = any_model(2, 3), m2 = any_model(2, 2), m1 = any_model(2, 1);
    const auto x = s.positions(), v = s.velocities();
    auto close = [](Complex a, Complex b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); };
    EXPECT_TRUE(close(xddot_double(x, v, f, m3),
                      (2.0 * v1 * (v1 + 2.0 * v2) - 2.0 * x1 * f[0] - f[1]) / (2.0 * (x1 - x2))));
    EXPECT_TRUE(close(xddot_double(x, v, f, m1),
                      (-2.0 * x1 * v1 * (v1 - 2.0 * v2) + 4.0 * v1 * v1 * x2 + x1 * f[1] + 2.0 * f[2]) /
                          (2.0 * x1 * (x1 - x2))));
    EXPECT_TRUE(close(xddot_simple(2, x, v, f, m3),
                      (-2.0 * v1 * (v1 + 2.0 * v2) + (x1 + x2) * f[0] + f[1]) / (x1 - x2)));
    EXPECT_TRUE(close(xddot_simple(2, x, v, f, m2),
                      (-2.0 * v1 * (v1 * x2 + 2.0 * v2 * x1) + x1 * x2 * f[0] - f[2]) / (x1 * (x1 - x2))));
  }
}

TEST(SecondDerivatives, VanishForStaticState) {
  const std::vector<Complex> x{{1.0, 0.5}, {-0.5, 0.2}, {0.1, -0.9}};
  const std::vector<Complex> v(3), f(4);
  for (int mbar = 1; mbar <= 4; ++mbar) {
    const auto spec = any_model(3, mbar);
    EXPECT_EQ(xddot_double(x, v, f, spec), Complex{});
    for (int n = 2; n <= 3; ++n) EXPECT_EQ(xddot_simple(n, x, v, f, spec), Complex{});
  }
}

// The second-derivative formulas invert the Vieta acceleration map.
TEST(SecondDerivatives, RecoverZeroAccelerations) {
  oracle::StateSampler rng(oracle::test_seed() + 4);
  for (int N = 2; N <= 5; ++N) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto s = rng.state(static_cast<std::size_t>(N), 1.0, 0.2);
      std::vector<Complex> a;
      for (int i = 0; i < N; ++i) a.push_back(rng.disc(1.0));
      const auto ydd = vieta_acceleration(s.positions(), s.velocities(), a, 1e-4);
      const int mbar = 1 + trial % (N + 1);
      const auto spec = any_model(N, mbar);
      const double scale = std::max(1.0, oracle::max_abs(a));
      EXPECT_LT(std::abs(xddot_double(s.positions(), s.velocities(), ydd, spec) - a[0]), 1e-4 * scale)
          << "N=" << N << " mbar=" << mbar;
      for (int n = 2; n <= N; ++n) {
        EXPECT_LT(std::abs(xddot_simple(n, s.positions(), s.velocities(), ydd, spec) - a[n - 1]), 1e-4 * scale)
            << "N=" << N << " mbar=" << mbar << " n=" << n;
      }
    }
  }
}

TEST(SystemRhs, MatchesTwoBodyPlugIn) {
  oracle::StateSampler rng(oracle::test_seed() + 5);
  for (int mbar = 1; mbar <= 3; ++mbar) {
    for (int trial = 0; trial < 100; ++trial) {
      std::map<int, CoefficientLaw> laws;
      const double omega = rng.uniform(0.5, 7.0);
      for (int m = 1; m <= 3; ++m) {
        if (m == mbar) continue;
        const int pick = static_cast<int>(rng.uniform(0.0, 3.0));
        laws[m] = pick == 0   ? CoefficientLaw::linear_velocity(random_rate(rng), omega)
                  : pick == 1 ? CoefficientLaw::harmonic(random_rate(rng), omega)
                              : CoefficientLaw::damped(rng.uniform(0.05, 2.0));
      }
      const ModelSpec spec(2, mbar, laws);
      const auto s = rng.state(2);
      const auto y = oracle::vieta(s.positions());
      const auto yd = oracle::vieta_rate(s.positions(), s.velocities(), 1e-7);
      Complex f[4] = {};
      for (const auto& [m, law] : laws) f[m] = second_derivative(law, y[m - 1], yd[m - 1]);
      const auto ref = oracle::two_body_plugin(mbar, s.x1(), s.positions()[1], s.v1(), s.velocities()[1], f);
      EXPECT_LT(oracle::rel_diff(system_rhs(spec, s), ref), 1e-6) << "mbar=" << mbar;
    }
  }
}

TEST(SystemRhs, EqualRatesSimplifyForDoubleZero) {
  oracle::StateSampler rng(oracle::test_seed() + 6);
  const double omega = 2.3;
  const Rational r{2, 3};
  const ModelSpec spec(2, 3, {{1, CoefficientLaw::linear_velocity(r, omega)},
                              {2, CoefficientLaw::linear_velocity(r, omega)}});
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = rng.state(2);
    const Complex x1 = s.x1(), x2 = s.positions()[1], v1 = s.v1(), v2 = s.velocities()[1];
    const Complex want = v1 * (v1 + 2.0 * v2) / (x1 - x2) + kI * omega * r.value() * v1;
    EXPECT_LT(std::abs(system_rhs(spec, s)[0] - want), 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST(SystemRhs, RejectsNearCoincidentZeros) {
  const auto spec = any_model(2, 3);
  const std::vector<Complex> x{{1.0, 0.0}, {1.0 + 1e-9, 0.0}}, v{{0.1, 0.0}, {0.0, 0.1}};
  EXPECT_THROW(system_rhs(spec, x, v), SingularConfiguration);
  EXPECT_THROW(system_rhs(spec, std::vector<Complex>{1.0}, std::vector<Complex>{0.0}), ContractViolation);
}

TEST(PrintedCatalog, HasAllSystems) {
  EXPECT_EQ(printed::catalog().size(), 22u);
  std::size_t errata = 0;
  for (const auto& sys : printed::catalog()) errata += sys.corrected != nullptr;
  EXPECT_EQ(errata, 6u);
  EXPECT_THROW(printed::find("9.9.9"), ContractViolation);
}

TEST(PrintedCatalog, GenericRhsMatchesEveryPrintedSystem) {
  oracle::StateSampler rng(oracle::test_seed() + 7);
  for (const auto& sys : printed::catalog()) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto params = random_params(rng);
      const auto spec = printed::model_spec(sys, params);
      const auto s = rng.state(static_cast<std::size_t>(sys.N));
      const auto generic = system_rhs(spec, s);
      const auto hand = sys.rhs()(params, s.positions(), s.velocities());
      worst = std::max(worst, oracle::rel_diff(hand, generic));
    }
    EXPECT_LE(worst, 1e-11) << sys.id;
  }
}

TEST(PrintedCatalog, VerbatimErrataDisagree) {
  oracle::StateSampler rng(oracle::test_seed() + 8);
  for (const auto& sys : printed::catalog()) {
    if (!sys.corrected) continue;
    EXPECT_FALSE(sys.erratum.empty()) << sys.id;
    const auto params = random_params(rng);
    const auto s = rng.state(static_cast<std::size_t>(sys.N));
    const auto generic = system_rhs(printed::model_spec(sys, params), s);
    const auto verbatim = sys.printed(params, s.positions(), s.velocities());
    EXPECT_GT(oracle::rel_diff(verbatim, generic), 1e-3) << sys.id;
  }
}

TEST(PrintedCatalog, EqualRateFormsMatchGeneralForms) {
  oracle::StateSampler rng(oracle::test_seed() + 9);
  for (const auto& sys : printed::catalog()) {
    if (!sys.single_r || sys.id.find("-equal-r") == std::string::npos) continue;
    const auto& general = printed::find(sys.id.substr(0, sys.id.find("-equal-r")));
    for (int trial = 0; trial < 100; ++trial) {
      auto params = random_params(rng);
      for (int m = 1; m <= 4; ++m) params.rm[m] = params.r;
      const auto s = rng.state(2);
      EXPECT_LT(oracle::rel_diff(sys.rhs()(params, s.positions(), s.velocities()),
                                 general.rhs()(params, s.positions(), s.velocities())),
                1e-12)
          << sys.id;
    }
  }
}

// With a = 0 the damped coefficient moves at constant velocity, which is the
// harmonic law in the limit of vanishing rate r3.
TEST(PrintedCatalog, UndampedLimitMatchesSlowHarmonicSibling) {
  oracle::StateSampler rng(oracle::test_seed() + 10);
  const auto& damped = printed::find("3.4.2");
  const auto& harmonic = printed::find("3.2.2");
  for (int trial = 0; trial < 100; ++trial) {
    auto params = random_params(rng);
    params.a = 0.0;
    params.rm[1] = params.r;
    params.rm[3] = Rational{1, 1'000'000};
    const auto s = rng.state(2);
    const auto d = damped.rhs()(params, s.positions(), s.velocities());
    const auto h = harmonic.rhs()(params, s.positions(), s.velocities());
    EXPECT_LT(oracle::rel_diff(d, h), 1e-9);
  }
}
