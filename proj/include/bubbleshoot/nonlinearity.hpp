#pragma once

// Right-hand sides f(u) of the radial problems, evaluated with the
// exponential factor kept in the log domain.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bubbleshoot/error.hpp"
#include "bubbleshoot/quadrature.hpp"

namespace bubbleshoot {

enum class Variant {
  /// f(u) = lambda_bar u + beta u exp(u^2)
  AdimurthiDruet,
  /// f(u) = beta u g(|u|), g(t) = exp(t^2 - a t) for t >= c0
  GType,
};

enum class GFloor {
  /// g = 1 on [0, c0); with c0 = a this is g = max(1, exp(t^2 - a t)).
  Constant,
  /// g = 1 on [0, a/2], linear from 1 to exp(c0^2 - a c0) on [a/2, c0].
  LinearRamp,
};

/// log_beta stands in for beta = 0: exp(u^2 + log_beta) is exactly zero.
inline constexpr double kNoExponential = -1e6;

/// Largest exponent accepted before a value is declared unrepresentable.
inline constexpr double kMaxExponent = 700.0;

struct NonlinearitySpec {
  Variant variant = Variant::AdimurthiDruet;
  double lambda_bar = 0.0;
  double log_beta = 0.0;
  double a = 0.0;
  double c0 = 0.0;
  GFloor floor = GFloor::Constant;

  static NonlinearitySpec adimurthi_druet(double lambda_bar, double log_beta) {
    NonlinearitySpec s;
    s.variant = Variant::AdimurthiDruet;
    s.lambda_bar = lambda_bar;
    s.log_beta = log_beta;
    return s;
  }

  /// g-type spec; c0 defaults to a for the constant floor.
  static NonlinearitySpec g_type(double a, double log_beta, GFloor floor = GFloor::Constant,
                                 double c0 = std::numeric_limits<double>::quiet_NaN()) {
    if (!(a > 0.0)) throw ConfigError("g-type nonlinearity needs a > 0");
    NonlinearitySpec s;
    s.variant = Variant::GType;
    s.a = a;
    s.log_beta = log_beta;
    s.floor = floor;
    s.c0 = std::isnan(c0) ? a : c0;
    if (!(s.c0 > 0.0)) throw ConfigError("g-type nonlinearity needs c0 > 0");
    if (floor == GFloor::LinearRamp && !(s.c0 > a / 2)) {
      throw ConfigError("linear-ramp floor needs c0 > a/2");
    }
    return s;
  }

  NonlinearitySpec with_log_beta(double lb) const {
    NonlinearitySpec s = *this;
    s.log_beta = lb;
    return s;
  }
};

namespace nonlinearity_detail {

[[noreturn]] inline void overflow(double u, double exponent) {
  throw OverflowError("gamma too large for 64-bit mode: exponent " + std::to_string(exponent) +
                      " at u=" + std::to_string(u) + " exceeds " + std::to_string(kMaxExponent));
}

inline void check_exponent(double u, double exponent) {
  if (exponent > kMaxExponent || std::isnan(exponent)) overflow(u, exponent);
}

// g on the floor region [0, c0).
inline double floor_value(const NonlinearitySpec& spec, double t) {
  if (spec.floor == GFloor::Constant) return 1.0;
  const double half = spec.a / 2;
  if (t <= half) return 1.0;
  const double top = std::exp(spec.c0 * spec.c0 - spec.a * spec.c0);
  return 1.0 + (top - 1.0) * (t - half) / (spec.c0 - half);
}

}  // namespace nonlinearity_detail

/// log g(t) for t >= 0 (g-type only).
inline double log_g(const NonlinearitySpec& spec, double t) {
  if (t >= spec.c0) return t * t - spec.a * t;
  return std::log(nonlinearity_detail::floor_value(spec, t));
}

/// g(t), t >= 0, excluding beta. Continuous at c0.
inline double eval_g(const NonlinearitySpec& spec, double t) {
  if (spec.variant != Variant::GType) throw ConfigError("eval_g needs a g-type spec");
  if (!(t >= 0.0)) throw DomainError("eval_g: negative argument " + std::to_string(t));
  if (t >= spec.c0) {
    const double e = t * t - spec.a * t;
    nonlinearity_detail::check_exponent(t, e);
    return std::exp(e);
  }
  return nonlinearity_detail::floor_value(spec, t);
}

/// f(u); odd in u. Throws OverflowError when the log of the exponential
/// term exceeds 700.
inline double eval_f(const NonlinearitySpec& spec, double u) {
  if (u == 0.0) return 0.0;
  const double t = std::abs(u);
  const double sign = u > 0.0 ? 1.0 : -1.0;
  if (spec.variant == Variant::AdimurthiDruet) {
    const double e = t * t + spec.log_beta + std::log(t);
    nonlinearity_detail::check_exponent(u, e);
    return spec.lambda_bar * u + sign * std::exp(e);
  }
  if (t >= spec.c0) {
    const double e = t * t - spec.a * t + spec.log_beta + std::log(t);
    nonlinearity_detail::check_exponent(u, e);
    return sign * std::exp(e);
  }
  return std::exp(spec.log_beta) * u * nonlinearity_detail::floor_value(spec, t);
}

/// Log of the exponential part of f at |u| = t, i.e. log(beta t e^{t^2})
/// or log(beta t g(t)). Used for weighted integrals that must not overflow.
inline double log_exponential_term(const NonlinearitySpec& spec, double t) {
  if (t == 0.0) return -std::numeric_limits<double>::infinity();
  const double lg = spec.variant == Variant::AdimurthiDruet ? t * t : log_g(spec, t);
  return lg + spec.log_beta + std::log(t);
}

/// F(t) = int_0^t f(s) ds.
inline double primitive_f(const NonlinearitySpec& spec, double u) {
  const double t = std::abs(u);
  if (spec.variant == Variant::AdimurthiDruet) {
    // beta (e^{t^2} - 1) / 2 written as exp(log_beta) expm1(t^2) / 2 without overflow
    const double e = spec.log_beta + t * t;
    nonlinearity_detail::check_exponent(u, e);
    const double expo = t * t < 1.0 ? std::exp(spec.log_beta) * std::expm1(t * t)
                                    : std::exp(e) * (-std::expm1(-t * t));
    return 0.5 * spec.lambda_bar * t * t + 0.5 * expo;
  }
  auto integrand = [&](double s) { return eval_f(spec, s); };
  if (t <= spec.c0) {
    return quad::integrate(integrand, 0.0, t, {.rel_tol = 1e-13}).value;
  }
  const double below = quad::integrate(integrand, 0.0, spec.c0, {.rel_tol = 1e-13}).value;
  return below + quad::integrate(integrand, spec.c0, t, {.rel_tol = 1e-13}).value;
}

inline const char* to_string(Variant v) {
  return v == Variant::AdimurthiDruet ? "AdimurthiDruet" : "GType";
}

inline const char* to_string(GFloor f) {
  return f == GFloor::Constant ? "constant" : "linear_ramp";
}

}  // namespace bubbleshoot
