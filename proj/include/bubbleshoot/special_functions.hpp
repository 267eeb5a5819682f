#pragma once

// Bessel functions J0/J1 on [0, 200], zeros of J0, and the radial Dirichlet
// eigen-data of the unit disk.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bubbleshoot/error.hpp"
#include "bubbleshoot/quadrature.hpp"

namespace bubbleshoot {

/// Radial Dirichlet eigen-data of the unit disk for mode k:
/// v_k(r) = norm_c * J0(j0k r), with unit L2 norm on the disk and v_k(0) > 0.
struct EigenData {
  int k = 0;
  double j0k = 0.0;
  double lambda_k = 0.0;
  double norm_c = 0.0;
  double r_k = 0.0;      // j0k / j01
  double alpha_k = 0.0;  // L2 mass of the extended first eigenfunction on B(r_k)
};

namespace bessel_detail {

inline constexpr double kMaxArgument = 200.0;
// Below this argument the power series (in extended precision) is used,
// above it the Hankel asymptotic expansion.
inline constexpr double kSeriesLimit = 15.0;

inline void check_argument(double x, const char* name) {
  if (!(x >= 0.0 && x <= kMaxArgument)) {
    throw DomainError(std::string(name) + ": argument " + std::to_string(x) +
                      " outside [0, 200]");
  }
}

// sum_k (-1)^k (x^2/4)^k / (k! (k+order)!) times (x/2)^order
inline long double series(long double x, int order) {
  const long double q = x * x / 4.0L;
  long double term = 1.0L;
  for (int i = 1; i <= order; ++i) term *= (x / 2.0L) / i;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<long double>(k) * (k + order));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-22L) break;
  }
  return sum;
}

inline long double hankel(long double x, int order) {
  const long double mu = 4.0L * order * order;
  long double p = 0.0L;
  long double q = 0.0L;
  long double coeff = 1.0L;  // a_m(order) / x^m
  long double previous = INFINITY;
  for (int m = 0; m < 200; ++m) {
    if (m > 0) {
      const long double odd = 2.0L * m - 1.0L;
      coeff *= (mu - odd * odd) / (8.0L * m * x);
    }
    const long double mag = std::fabs(coeff);
    if (mag > previous) break;  // asymptotic series starts diverging
    previous = mag;
    const long double sign = ((m / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (m % 2 == 0) {
      p += sign * coeff;
    } else {
      q += sign * coeff;
    }
    if (mag < 1e-21L) break;
  }
  const long double pi = std::numbers::pi_v<long double>;
  const long double chi = x - (0.5L * order + 0.25L) * pi;
  return std::sqrt(2.0L / (pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace bessel_detail

/// J0(x) for 0 <= x <= 200, absolute error below 1e-13.
inline double bessel_j0(double x) {
  bessel_detail::check_argument(x, "bessel_j0");
  if (x <= bessel_detail::kSeriesLimit) return static_cast<double>(bessel_detail::series(x, 0));
  return static_cast<double>(bessel_detail::hankel(x, 0));
}

/// J1(x) for 0 <= x <= 200, absolute error below 1e-13.
inline double bessel_j1(double x) {
  bessel_detail::check_argument(x, "bessel_j1");
  if (x <= bessel_detail::kSeriesLimit) return static_cast<double>(bessel_detail::series(x, 1));
  return static_cast<double>(bessel_detail::hankel(x, 1));
}

namespace bessel_detail {

inline double find_zero(int k) {
  const double pi = std::numbers::pi;
  double lo = (k - 0.75) * pi;
  double hi = (k + 0.25) * pi;
  // Scan the bracket for the sign change, then bisect to full precision.
  constexpr int kScan = 16;
  double f_lo = bessel_j0(lo);
  bool found = false;
  for (int i = 1; i <= kScan; ++i) {
    const double x = (k - 0.75) * pi + i * pi / kScan;
    const double fx = bessel_j0(x);
    if ((f_lo > 0.0) != (fx > 0.0) || fx == 0.0) {
      hi = x;
      found = true;
      break;
    }
    lo = x;
    f_lo = fx;
  }
  if (!found) {
    throw DomainError("bessel_zero: no sign change of J0 in bracket for k=" + std::to_string(k));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = bessel_j0(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(bessel_j0(lo)) <= std::abs(bessel_j0(hi)) ? lo : hi;
}

inline constexpr int kMaxZeroIndex = 20;
inline constexpr int kMaxEigenIndex = 10;

inline const std::array<double, kMaxZeroIndex + 1>& zero_table() {
  static const auto table = [] {
    std::array<double, kMaxZeroIndex + 1> t{};
    for (int k = 1; k <= kMaxZeroIndex; ++k) t[k] = find_zero(k);
    return t;
  }();
  return table;
}

}  // namespace bessel_detail

/// k-th positive zero of J0, 1 <= k <= 20. Computed once per process.
inline double bessel_zero(int k) {
  if (k < 1 || k > bessel_detail::kMaxZeroIndex) {
    throw DomainError("bessel_zero: index " + std::to_string(k) + " outside [1, 20]");
  }
  return bessel_detail::zero_table()[k];
}

/// First eigenvalue of the unit disk, j01^2.
inline double lambda1() {
  const double j = bessel_zero(1);
  return j * j;
}

/// v1(0) = 1 / (sqrt(pi) |J1(j01)|).
inline double v1_at_zero() {
  static const double value = 1.0 / (std::sqrt(std::numbers::pi) * std::abs(bessel_j1(bessel_zero(1))));
  return value;
}

/// First eigenfunction extended to the plane: v1(0) J0(j01 r), 0 <= r <= 20.
inline double vbar1(double r) {
  if (!(r >= 0.0 && r <= 20.0)) {
    throw DomainError("vbar1: radius " + std::to_string(r) + " outside [0, 20]");
  }
  return v1_at_zero() * bessel_j0(bessel_zero(1) * r);
}

namespace bessel_detail {

inline EigenData compute_eigen_data(int k) {
  EigenData e;
  e.k = k;
  e.j0k = bessel_zero(k);
  e.lambda_k = e.j0k * e.j0k;
  e.norm_c = 1.0 / (std::sqrt(std::numbers::pi) * std::abs(bessel_j1(e.j0k)));
  e.r_k = (k == 1) ? 1.0 : e.j0k / bessel_zero(1);
  if (k == 1) {
    e.alpha_k = 1.0;
  } else {
    // Split at the interior zeros r_1..r_{k-1} so every panel is smooth and one-signed.
    std::array<double, kMaxEigenIndex + 1> pts{};
    pts[0] = 0.0;
    for (int n = 1; n < k; ++n) pts[n] = bessel_zero(n) / bessel_zero(1);
    pts[k] = e.r_k;
    auto integrand = [](double s) {
      const double v = vbar1(s);
      return 2.0 * std::numbers::pi * v * v * s;
    };
    e.alpha_k = quad::integrate(integrand, std::span<const double>(pts.data(), k + 1),
                                {.rel_tol = 1e-12})
                    .value;
  }
  return e;
}

}  // namespace bessel_detail

/// Eigen-data of radial mode k, 1 <= k <= 10. Cached after first use.
inline const EigenData& eigen_data(int k) {
  if (k < 1 || k > bessel_detail::kMaxEigenIndex) {
    throw DomainError("eigen_data: mode " + std::to_string(k) + " outside [1, 10]");
  }
  static const auto table = [] {
    std::array<EigenData, bessel_detail::kMaxEigenIndex + 1> t{};
    for (int n = 1; n <= bessel_detail::kMaxEigenIndex; ++n) t[n] = bessel_detail::compute_eigen_data(n);
    return t;
  }();
  return table[k];
}

/// Normalized eigenfunction v_k(r) = norm_c J0(j0k r).
inline double eigenfunction(int k, double r) {
  const auto& e = eigen_data(k);
  return e.norm_c * bessel_j0(e.j0k * r);
}

}  // namespace bubbleshoot
