#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bubbleshoot/special_functions.hpp"
#include "oracles.hpp"

using namespace bubbleshoot;

TEST(BesselJ0, MatchesSeriesOracleOnZeroToFifty) {
  double worst = 0.0;
  double worst_x = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 50.0 * i / 999.0;
    const double d = std::abs(bessel_j0(x) - oracle::j0(x));
    if (d > worst) {
      worst = d;
      worst_x = x;
    }
  }
  EXPECT_LE(worst, 1e-13) << "at x=" << worst_x;
}

TEST(BesselJ1, MatchesSeriesOracleOnZeroToFifty) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 50.0 * i / 999.0;
    worst = std::max(worst, std::abs(bessel_j1(x) - oracle::j1(x)));
  }
  EXPECT_LE(worst, 1e-13);
}

TEST(BesselJ0, SpliceNeighbourhoodIsContinuous) {
  for (double x : {14.9, 14.99, 15.0, 15.000001, 15.01, 15.5, 16.0, 18.0}) {
    EXPECT_NEAR(bessel_j0(x), oracle::j0(x), 1e-13) << x;
    EXPECT_NEAR(bessel_j1(x), oracle::j1(x), 1e-13) << x;
  }
}

TEST(BesselJ0, KnownValues) {
  EXPECT_EQ(bessel_j0(0.0), 1.0);
  EXPECT_LE(std::abs(bessel_j0(2.404825557695773)), 1e-12);
  EXPECT_LE(std::abs(bessel_j0(5.520078110286311)), 1e-12);
}

TEST(BesselJ1, KnownValuesAndDerivativeIdentity) {
  EXPECT_EQ(bessel_j1(0.0), 0.0);
  EXPECT_NEAR(bessel_j1(2.404825557695773), oracle::j1(2.404825557695773), 1e-13);
  EXPECT_NEAR(bessel_j1(2.404825557695773), 0.519147497, 1e-9);
  const double h = 1e-5;
  for (double x : {1.0, 7.3, 30.0, 150.0}) {
    const double fd = -(bessel_j0(x + h) - bessel_j0(x - h)) / (2 * h);
    EXPECT_NEAR(fd, bessel_j1(x), 1e-8) << x;
  }
}

TEST(BesselJ0, LargeArgumentsAgreeWithLibstdcxx) {
  for (double x : {60.0, 99.5, 150.25, 199.9}) {
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-13) << x;
    EXPECT_NEAR(bessel_j1(x), std::cyl_bessel_j(1.0, x), 1e-13) << x;
  }
}

TEST(BesselJ0, RejectsOutOfRange) {
  EXPECT_THROW(bessel_j0(-1e-3), DomainError);
  EXPECT_THROW(bessel_j0(200.5), DomainError);
  EXPECT_THROW(bessel_j1(-1.0), DomainError);
  EXPECT_THROW(bessel_j1(250.0), DomainError);
}

TEST(BesselZero, AgreesWithOracleBisection) {
  const double pi = std::numbers::pi;
  for (int k = 1; k <= 20; ++k) {
    const double z = bessel_zero(k);
    EXPECT_LE(std::abs(bessel_j0(z)), 1e-12) << k;
    if (k <= 5) {
      // The oracle zero lies in the same quarter-shifted period.
      const double expected = oracle::j0_zero((k - 0.75) * pi + 0.1, (k + 0.25) * pi - 0.1);
      EXPECT_NEAR(z, expected, 1e-12) << k;
    }
  }
  EXPECT_NEAR(bessel_zero(1), 2.404825557695773, 1e-12);
  EXPECT_NEAR(bessel_zero(2), 5.520078110286311, 1e-12);
  EXPECT_NEAR(bessel_zero(3), 8.653727912911013, 1e-12);
  EXPECT_THROW(bessel_zero(0), DomainError);
  EXPECT_THROW(bessel_zero(21), DomainError);
}

TEST(EigenData, FirstMode) {
  const auto& e = eigen_data(1);
  EXPECT_EQ(e.k, 1);
  EXPECT_EQ(e.lambda_k, e.j0k * e.j0k);
  EXPECT_NEAR(e.lambda_k, 5.783185963, 1e-8);
  EXPECT_NEAR(e.norm_c, 1.08676, 1e-5);
  EXPECT_EQ(e.r_k, 1.0);
  EXPECT_EQ(e.alpha_k, 1.0);
  EXPECT_EQ(e.norm_c, v1_at_zero());
}

TEST(EigenData, SecondMode) {
  const auto& e = eigen_data(2);
  EXPECT_NEAR(e.r_k, bessel_zero(2) / bessel_zero(1), 0.0);
  EXPECT_NEAR(e.r_k, 2.29542, 1e-5);
  EXPECT_NEAR(e.lambda_k, 30.4713, 1e-4);
  EXPECT_GT(e.alpha_k, 1.0);
  // Closed form: int_0^j J0(s)^2 s ds = j^2 J1(j)^2 / 2 at zeros of J0.
  const double j1 = bessel_zero(1);
  const double j2 = bessel_zero(2);
  const double closed = (j2 * j2 * std::pow(oracle::j1(j2), 2)) / (j1 * j1 * std::pow(oracle::j1(j1), 2));
  EXPECT_NEAR(e.alpha_k, closed, 1e-10 * closed);
}

TEST(EigenData, InvariantsForAllModes) {
  double previous_r = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const auto& e = eigen_data(k);
    EXPECT_LE(std::abs(bessel_j0(e.j0k)), 1e-12);
    EXPECT_GT(e.norm_c, 0.0);
    EXPECT_GT(e.r_k, previous_r);
    previous_r = e.r_k;
    // Independent check of the normalization by Gauss-Kronrod on the disk.
    auto sq = [&](double r) {
      const double v = e.norm_c * oracle::j0(e.j0k * r);
      return 2.0 * std::numbers::pi * v * v * r;
    };
    EXPECT_NEAR(quad::integrate(sq, 0.0, 1.0, {.rel_tol = 1e-13}).value, 1.0, 1e-10) << k;
  }
  EXPECT_THROW(eigen_data(0), DomainError);
  EXPECT_THROW(eigen_data(11), DomainError);
}

TEST(EigenData, EigenOdeResidualByFiniteDifferences) {
  const double h = 1e-4;
  for (int k = 1; k <= 5; ++k) {
    const double lam = eigen_data(k).lambda_k;
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double r = 0.1 + 0.8 * i / 80.0;
      const double vm = eigenfunction(k, r - h);
      const double v0 = eigenfunction(k, r);
      const double vp = eigenfunction(k, r + h);
      const double d2 = (vp - 2 * v0 + vm) / (h * h);
      const double d1 = (vp - vm) / (2 * h);
      worst = std::max(worst, std::abs(d2 + d1 / r + lam * v0));
    }
    EXPECT_LE(worst, 1e-6 * std::max(1.0, lam)) << k;
  }
}

TEST(EigenData, FirstTwoModesAreOrthogonal) {
  auto prod = [](double r) { return 2.0 * std::numbers::pi * eigenfunction(1, r) * eigenfunction(2, r) * r; };
  EXPECT_NEAR(quad::integrate(prod, 0.0, 1.0, {.rel_tol = 0, .abs_tol = 1e-13}).value, 0.0, 1e-9);
}

TEST(Vbar1, ValuesAndZeros) {
  EXPECT_NEAR(vbar1(0.0), 1.08676, 1e-5);
  EXPECT_LE(std::abs(vbar1(1.0)), 1e-12);
  EXPECT_LE(std::abs(vbar1(eigen_data(2).r_k)), 1e-10);
  // Sign changes exactly at the r_k.
  for (int k = 1; k <= 5; ++k) {
    const double rk = eigen_data(k).r_k;
    EXPECT_LT(vbar1(rk - 1e-6) * vbar1(rk + 1e-6), 0.0) << k;
  }
  EXPECT_THROW(vbar1(-0.1), DomainError);
  EXPECT_THROW(vbar1(20.5), DomainError);
}
