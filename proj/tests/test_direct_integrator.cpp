#include <gtest/gtest.h>

#include "dblroot/analysis.hpp"
#include "dblroot/direct_integrator.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dblroot;

namespace {

// The configurations that carry their own parameter values and initial data.
const char* const kSourceExamples[] = {"example-3.1.1", "example-3.2.1", "example-3.3.3", "example-3.4.2",
                                       "example-3.5-mbar3"};

TrackedTrajectory run(const Preset& p, double t_end, int samples, const IntegratorSettings& s = {}) {
  const auto req = fixture::request(p, t_end, samples);
  return integrate(req.spec, req.initial, req.t_grid, s);
}

// Five-point centered derivative of equally spaced samples at index k.
Complex five_point(const std::vector<Complex>& f, std::size_t k, double dt) {
  return (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]) / (12.0 * dt);
}

}  // namespace

TEST(Integrate, FrozenModelAtRestStaysPut) {
  const ModelSpec spec(2, 3, {{1, CoefficientLaw::frozen()}, {2, CoefficientLaw::frozen()}});
  const ZeroState s0({{1.0, 0.5}, {-0.7, 0.2}}, std::vector<Complex>(2));
  const auto traj = integrate(spec, s0, uniform_grid(3.0, 31));
  ASSERT_EQ(traj.size(), 31u);
  for (const auto& s : traj.states) EXPECT_EQ(s, s0);
}

TEST(Integrate, HybridExampleReturnsAfterSix) {
  const auto traj = run(fixture::preset("example-3.3.3"), 6.0, 2);
  EXPECT_LE(position_distance(traj.states.back(), traj.states.front()), 1e-6);
}

TEST(Integrate, ThreeBodyExampleReturnsAfterSix) {
  const auto traj = run(fixture::preset("example-3.5-mbar3"), 6.0, 2);
  for (std::size_t n = 0; n < 3; ++n) {
    EXPECT_LE(std::abs(traj.states.back().positions()[n] - traj.states.front().positions()[n]), 1e-5) << n;
  }
}

TEST(Integrate, GridStartsAtZeroAndIncreases) {
  const auto& p = fixture::preset("example-3.1.1");
  const auto spec = fixture::model(p);
  EXPECT_THROW(integrate(spec, fixture::initial(p), std::vector<double>{0.5, 1.0}), ContractViolation);
  EXPECT_THROW(integrate(spec, fixture::initial(p), std::vector<double>{0.0, 1.0, 0.9}), ContractViolation);
  const auto traj = integrate(spec, fixture::initial(p), std::vector<double>{0.0});
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj.states[0], fixture::initial(p));
}

TEST(Integrate, EmitsExactlyTheRequestedTimes) {
  const auto& p = fixture::preset("example-3.2.1");
  const std::vector<double> grid{0.0, 1e-6, 0.3, 0.30001, 2.0, 6.0};
  const auto req = fixture::request(p);
  const auto traj = integrate(req.spec, req.initial, grid);
  EXPECT_EQ(traj.times, grid);
  // Dense output agrees with a run that stops exactly at each sample.
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const auto direct = integrate(req.spec, req.initial, std::vector<double>{0.0, grid[k]});
    EXPECT_LT(state_distance(direct.states.back(), traj.states[k]), 1e-7) << grid[k];
  }
}

TEST(IntegratePrinted, MatchesGenericRhsOverAFullPeriod) {
  const auto& p = fixture::preset("example-3.1.1");
  const auto req = fixture::request(p);
  const auto generic = integrate(req.spec, req.initial, req.t_grid);
  const auto hand = integrate_printed(p.system_id, p.params, req.initial, req.t_grid);
  EXPECT_LT(compare(generic, hand).max_err, 1e-8);
}

TEST(IntegratePrinted, UndampedLimitTracksSlowHarmonicSibling) {
  const auto& p = fixture::preset("example-3.4.2");
  auto params = p.params;
  params.a = 0.0;
  params.rm[1] = params.r;
  params.rm[3] = Rational{1, 1'000'000};
  const auto grid = uniform_grid(2.0, 41);
  const auto damped = integrate_printed("3.4.2", params, fixture::initial(p), grid);
  const auto harmonic = integrate_printed("3.2.2", params, fixture::initial(p), grid);
  EXPECT_LT(compare(damped, harmonic).max_err, 1e-8);
}

TEST(IntegratePrinted, VerbatimErratumChangesTheMotion) {
  const auto& p = fixture::preset("example-3.4.2");
  const auto grid = uniform_grid(3.0, 61);
  const auto fixed = integrate_printed(p.system_id, p.params, fixture::initial(p), grid);
  const auto verbatim =
      integrate_printed(p.system_id, p.params, fixture::initial(p), grid, IntegratorSettings{}, Reading::verbatim);
  EXPECT_GT(compare(fixed, verbatim).max_err, 1e-3);
  EXPECT_THROW(integrate_printed("3.9.9", p.params, fixture::initial(p), grid), ContractViolation);
}

TEST(Integrate, HalvingToleranceMovesEndpointsWithinTenTolerances) {
  for (const char* name : kSourceExamples) {
    const auto& p = fixture::preset(name);
    IntegratorSettings coarse, fine;
    fine.rel_tol = coarse.rel_tol / 2.0;
    fine.abs_tol = coarse.abs_tol / 2.0;
    const auto a = run(p, p.t_end, 2, coarse).states.back();
    const auto b = run(p, p.t_end, 2, fine).states.back();
    // Measured in the integrator's own mixed norm at the smaller tolerance.
    double ratio = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (const auto& [u, w] : {std::pair{a.positions()[i], b.positions()[i]}, {a.velocities()[i], b.velocities()[i]}}) {
        ratio = std::max(ratio, std::abs(u - w) / (10.0 * (fine.abs_tol + fine.rel_tol * std::abs(w))));
      }
    }
    EXPECT_LT(ratio, 1.0) << name;
  }
}

TEST(Integrate, RefinedToleranceAgreesToOneInHundredMillion) {
  const auto& p = fixture::preset("example-3.1.1");
  IntegratorSettings tight;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-14;
  EXPECT_LE(compare(run(p, p.t_end, p.samples), run(p, p.t_end, p.samples, tight)).max_err, 1e-8);
}

TEST(Integrate, TimeReversalRecoversInitialData) {
  const auto& p = fixture::preset("example-3.2.1");
  const auto spec = fixture::model(p);
  const auto forward = run(p, p.t_end, 2);
  const auto& end = forward.states.back();
  // u(s) = x(T - s) solves u'' = F(u, -u').
  auto reversed = [&](std::span<const Complex> x, std::span<const Complex> v) {
    std::vector<Complex> minus_v(v.begin(), v.end());
    for (auto& z : minus_v) z = -z;
    return system_rhs(spec, x, minus_v);
  };
  std::vector<Complex> v_back(end.velocities().begin(), end.velocities().end());
  for (auto& z : v_back) z = -z;
  const ZeroState start(std::vector<Complex>(end.positions().begin(), end.positions().end()), v_back);
  const auto back = detail::integrate_with(reversed, spec.mbar(), start, uniform_grid(p.t_end, 2), {});
  const auto& s = back.states.back();
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_LT(std::abs(s.positions()[i] - p.positions[i]), 1e-7);
    EXPECT_LT(std::abs(-s.velocities()[i] - p.velocities[i]), 1e-7);
  }
}

TEST(Integrate, CoefficientsFollowTheirLaws) {
  for (const char* name : kSourceExamples) {
    const auto& p = fixture::preset(name);
    const auto spec = fixture::model(p);
    const double dt = 2e-3;
    const auto traj = run(p, 2.0, 1001);
    const std::size_t n_coeff = static_cast<std::size_t>(spec.N() + 1);
    std::vector<std::vector<Complex>> y(n_coeff), yd(n_coeff);
    for (const auto& s : traj.states) {
      const auto c = coefficients_from_zeros(s);
      const auto cd = coefficient_velocities_from_zeros(s);
      for (std::size_t m = 0; m < n_coeff; ++m) {
        y[m].push_back(c[m]);
        yd[m].push_back(cd[m]);
      }
    }
    double worst = 0.0;
    for (int m = 1; m <= spec.N() + 1; ++m) {
      if (!spec.evolved(m)) continue;
      const auto i = static_cast<std::size_t>(m - 1);
      for (std::size_t k = 2; k + 2 < traj.size(); k += 7) {
        const Complex ydd_fd = five_point(yd[i], k, dt);
        const Complex law = second_derivative(spec.law(m), y[i][k], yd[i][k]);
        worst = std::max(worst, std::abs(ydd_fd - law) / std::max(1.0, std::abs(ydd_fd)));
      }
    }
    EXPECT_LE(worst, 1e-6) << name;
  }
}

TEST(Integrate, SingularityBecomesCollisionError) {
  // Every evaluation past Re x1 = 1.5 is rejected, so steps shrink to nothing.
  auto accel = [](std::span<const Complex> x, std::span<const Complex>) {
    if (x[0].real() >= 1.5) throw SingularConfiguration("blocked", 1, 2, 0.0);
    return std::vector<Complex>(x.size());
  };
  const ZeroState s0({{1.0, 0.0}, {3.0, 0.0}}, {{1.0, 0.0}, {0.0, 0.0}});
  try {
    detail::integrate_with(accel, 3, s0, uniform_grid(1.0, 3), {});
    FAIL() << "expected a collision error";
  } catch (const CollisionError& e) {
    EXPECT_EQ(e.first(), 1u);
    EXPECT_EQ(e.second(), 2u);
    EXPECT_NEAR(e.time(), 0.5, 1e-6);
  }
}

TEST(Integrate, StepBudgetIsEnforced) {
  const auto& p = fixture::preset("example-3.1.1");
  IntegratorSettings s;
  s.max_steps = 10;
  EXPECT_THROW(run(p, p.t_end, 2, s), ConvergenceError);
}
