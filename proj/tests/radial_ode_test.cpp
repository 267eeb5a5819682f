#include <gtest/gtest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>
#include <string>

#include "bubbleshoot/radial_ode.hpp"
#include "bubbleshoot/shooting.hpp"
#include "bubbleshoot/special_functions.hpp"

using namespace bubbleshoot;

namespace {

NonlinearitySpec pure_linear(double lambda) { return NonlinearitySpec::adimurthi_druet(lambda, kNoExponential); }

// u(r) by integrating u'' = -u'/r - f(u) directly in r with odeint.
double direct_r_integration(const NonlinearitySpec& spec, double gamma, double r_target) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double r0 = 1e-6;
  const double f0 = eval_f(spec, gamma);
  State y{gamma - 0.25 * f0 * r0 * r0, -0.5 * f0 * r0};
  auto rhs = [&](const State& s, State& d, double r) {
    d[0] = s[1];
    d[1] = -s[1] / r - eval_f(spec, s[0]);
  };
  odeint::integrate_adaptive(odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, y, r0,
                             r_target, 1e-7);
  return y[0];
}

}  // namespace

TEST(Integrate, PureEigenEquationFirstZeroAtOne) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 1.5);
  ASSERT_FALSE(p.zeros.empty());
  EXPECT_NEAR(p.zeros.front().r, 1.0, 1e-9);
}

TEST(Integrate, ReproducesExtendedEigenfunction) {
  const double v0 = v1_at_zero();
  const auto p = integrate(pure_linear(lambda1()), v0, 3.05);
  double worst = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double r = 0.001 * i;
    worst = std::max(worst, std::abs(p.u_at(r) - vbar1(r)));
  }
  EXPECT_LE(worst, 1e-8);
  // vbar1 vanishes at r_2 and r_3 = j0k/j01 inside [0, 3].
  ASSERT_GE(p.zeros.size(), 2u);
  EXPECT_NEAR(p.zeros[1].r, bessel_zero(2) / bessel_zero(1), 1e-9);
}

TEST(Integrate, HarmonicProfileIsConstant) {
  const auto p = integrate(pure_linear(0.0), 1.0, 5.0);
  EXPECT_TRUE(p.zeros.empty());
  for (double u : p.u_vals) EXPECT_EQ(u, 1.0);
  EXPECT_EQ(p.u_at(2.5), 1.0);
}

TEST(Integrate, StrictlyDecreasingUntilFirstZero) {
  const auto spec = NonlinearitySpec::adimurthi_druet(3.0, -20.0);
  const auto p = integrate(spec, 5.0, 3.0, 1e-12, {.max_zeros = 1});
  ASSERT_FALSE(p.zeros.empty());
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p.u_vals[i - 1] <= 0.0) break;
    EXPECT_LT(p.u_vals[i], p.u_vals[i - 1]) << "grid index " << i;
  }
}

TEST(Integrate, SelfConvergenceInTolerance) {
  const auto spec = NonlinearitySpec::adimurthi_druet(4.0, -25.0);
  for (double tol : {1e-8, 1e-10, 1e-12}) {
    const double u1 = integrate(spec, 6.0, 1.2, tol).u_at(1.0);
    const double u2 = integrate(spec, 6.0, 1.2, tol / 2).u_at(1.0);
    EXPECT_LE(std::abs(u1 - u2), 50 * tol) << "tol=" << tol;
  }
}

TEST(Integrate, SeedPointAccuracy) {
  const auto spec = NonlinearitySpec::adimurthi_druet(4.0, -25.0);
  const double gamma = 6.0;
  const double xs = x_start_for(spec, gamma);
  const auto p = integrate(spec, gamma, 1.0);
  const auto deep = integrate(spec, gamma, 1.0, 1e-14, {.max_step = 0.025, .x_start = xs - 4.0});
  const double seed = p.u_vals.front();
  EXPECT_EQ(p.x_grid.front(), xs);
  EXPECT_LE(std::abs(deep.u_at_x(xs) - seed) / gamma, 1e-15);
}

TEST(Integrate, StartsInsideTheBubbleLayer) {
  // f(gamma) dominates at gamma = 10, so mu_hat^2 = 4 / (gamma f(gamma)).
  const auto spec = NonlinearitySpec::adimurthi_druet(5.0, -4.5);
  const double g = 10.0;
  const double log_mu = 0.5 * (std::log(4.0) + 4.5 - 2 * std::log(g) - g * g);
  EXPECT_NEAR(x_start_for(spec, g), log_mu - 8.0, 1e-10);
  // Pure linear: mu_hat^2 = 4 / (lambda_1 + 1).
  EXPECT_NEAR(x_start_for(pure_linear(lambda1()), 1.0), 0.5 * std::log(4.0 / (lambda1() + 1.0)) - 8.0, 1e-14);
  EXPECT_NEAR(x_start_for(pure_linear(lambda1()), 1.0), -8.264, 1e-3);
}

TEST(Integrate, LogRadiusMatchesDirectRadiusIntegration) {
  const auto spec = NonlinearitySpec::adimurthi_druet(2.0, -3.0);
  const auto p = integrate(spec, 1.0, 1.2);
  for (double r : {0.5, 1.0}) {
    EXPECT_NEAR(p.u_at(r), direct_r_integration(spec, 1.0, r), 1e-9) << "r=" << r;
  }
}

TEST(Integrate, ZerosAreTransversal) {
  const auto spec = NonlinearitySpec::adimurthi_druet(20.0, -10.0);
  const auto p = integrate(spec, 4.0, 4.0, 1e-12, {.max_zeros = 4});
  ASSERT_EQ(p.zeros.size(), 4u);
  for (std::size_t i = 0; i < p.zeros.size(); ++i) {
    EXPECT_GT(std::abs(p.zeros[i].du_dr), 1e-3);
    EXPECT_LE(std::abs(p.u_at(p.zeros[i].r)), 1e-13 * 4.0 * 1.0001);
    // slope alternates: downward after a positive region
    EXPECT_EQ(p.zeros[i].du_dr < 0.0, i % 2 == 0);
  }
  // one sign between consecutive zeros
  for (std::size_t z = 0; z + 1 < p.zeros.size(); ++z) {
    const double a = std::log(p.zeros[z].r), b = std::log(p.zeros[z + 1].r);
    const double sgn = p.u_at_x(0.5 * (a + b)) > 0 ? 1.0 : -1.0;
    for (int i = 1; i < 200; ++i) {
      const double x = a + (b - a) * i / 200.0;
      EXPECT_GT(sgn * p.u_at_x(x), 0.0);
    }
  }
}

TEST(Integrate, Errors) {
  const auto spec = pure_linear(lambda1());
  EXPECT_THROW(integrate(spec, 1.0, 1.0, 1e-16), ConfigError);
  EXPECT_THROW(integrate(spec, 1.0, 1.0, 1e-5), ConfigError);
  EXPECT_THROW(integrate(spec, 0.0, 1.0), ConfigError);
  EXPECT_THROW(integrate(NonlinearitySpec::adimurthi_druet(1.0, 0.0), 27.0, 1.0), OverflowError);
}

TEST(Integrate, MaxZerosStopsEarly) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 10.0, 1e-12, {.max_zeros = 1});
  EXPECT_EQ(p.zeros.size(), 1u);
  EXPECT_LT(p.r_end(), 1.2);
}

TEST(Integrate, GridThinning) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 3.0, 1e-12, {.max_step = 0.001, .max_points = 500});
  EXPECT_LE(p.size(), 500u);
  EXPECT_NEAR(p.r_end(), 3.0, 1e-12);
}

TEST(EnergyMonitor, PureLinearNonincreasing) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 1.5);
  const auto e = energy_monitor(p);
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LE(e[i], e[i - 1] + 1e-14);
}

TEST(EnergyMonitor, TheoremOneProfileNonincreasing) {
  const auto res = solve_theorem1({1.0, 6.0});
  const auto e = energy_monitor(res.profile);
  double worst = 0.0;
  for (std::size_t i = 1; i < e.size(); ++i) worst = std::max(worst, e[i] - e[i - 1]);
  EXPECT_LE(worst, 10 * 1e-12 * e.front());
}

TEST(EnergyMonitor, GTypeNonincreasing) {
  const auto p = integrate(NonlinearitySpec::g_type(2.0, 0.0), 5.0, 3.0, 1e-12, {.max_zeros = 1});
  const auto e = energy_monitor(p);
  double worst = 0.0;
  for (std::size_t i = 1; i < e.size(); ++i) worst = std::max(worst, e[i] - e[i - 1]);
  EXPECT_LE(worst, 1e-10 * e.front());
}

TEST(EnergyMonitor, HarmonicProfileConstant) {
  const auto e = energy_monitor(integrate(pure_linear(0.0), 1.0, 2.0));
  for (double v : e) EXPECT_EQ(v, e.front());
}

TEST(Profile, DilationRescalesRadius) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 2.0);
  const auto q = p.dilated(2.0);
  for (double r : {0.1, 0.3, 0.5, 0.9}) EXPECT_NEAR(q.u_at(r), p.u_at(2.0 * r), 1e-15);
  EXPECT_NEAR(q.zeros.front().r, 0.5 * p.zeros.front().r, 1e-15);
  EXPECT_NEAR(q.du_dr_at(0.3), 2.0 * p.du_dr_at(0.6), 1e-13);
}

TEST(Profile, CsvFormat) {
  const auto p = integrate(pure_linear(lambda1()), 1.0, 1.5, 1e-10, {.max_points = 50});
  std::ostringstream os;
  write_profile_csv(os, p);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,u,du_dr");
  double prev = -1.0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double r, u, d;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &r, &u, &d), 3) << line;
    EXPECT_GT(r, prev);
    EXPECT_EQ(r, std::exp(p.x_grid[rows]));
    EXPECT_EQ(u, p.u_vals[rows]);
    prev = r;
    ++rows;
  }
  EXPECT_EQ(rows, p.size());
}
