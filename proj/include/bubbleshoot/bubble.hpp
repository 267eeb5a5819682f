#pragma once

// Standard bubble T0, its first corrector S0, the concentration scales of a
// solved profile, and residuals of the inner expansions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "bubbleshoot/error.hpp"
#include "bubbleshoot/quadrature.hpp"
#include "bubbleshoot/shooting.hpp"

namespace bubbleshoot {

/// T0(y) = log(1 + y^2), the standard bubble: Delta T0 + 4 e^{-2 T0} = 0
/// with Delta = -div grad.
inline double T0(double y) { return std::log1p(y * y); }

/// S0(y) = -T0(y)/2 + y^2 / (2 (1 + y^2)).
inline double S0(double y) {
  const double y2 = y * y;
  return -0.5 * std::log1p(y2) + 0.5 * y2 / (1.0 + y2);
}

enum class ScaleVariant { AdimurthiDruet, GType };

struct BubbleScales {
  ScaleVariant variant = ScaleVariant::AdimurthiDruet;
  double gamma = 0.0;
  double log_mu = 0.0;
  double log_rho = 0.0;   // t_gamma(rho) = gamma^2 / 2
  double log_rho1 = 0.0;  // t_gamma(rho1) = gamma

  double mu() const { return std::exp(log_mu); }
  double rho() const { return std::exp(log_rho); }
  double rho1() const { return std::exp(log_rho1); }

  /// t_gamma(r) = log(1 + r^2 / mu^2) from the log-radius.
  double t_at_x(double x) const {
    const double s = 2.0 * (x - log_mu);
    return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
  }
  double t_at(double r) const { return r <= 0.0 ? 0.0 : t_at_x(std::log(r)); }

  /// log of the radius where t_gamma equals t.
  double log_radius_for_t(double t) const {
    const double half_log_em1 = t > 30.0 ? 0.5 * (t + std::log1p(-std::exp(-t))) : 0.5 * std::log(std::expm1(t));
    return log_mu + half_log_em1;
  }
};

/// Scales from beta gamma^2 e^{gamma^2} mu^2 = 4 (linear plus exponential) or
/// mu^2 beta gamma^2 g(gamma) = 4 (g-type), all in log form.
inline BubbleScales scales_for(const ShootingResult& res) {
  BubbleScales s;
  s.gamma = res.gamma;
  const double g = res.gamma;
  double log_growth = g * g;
  if (res.spec.variant == Variant::GType) {
    s.variant = ScaleVariant::GType;
    log_growth = log_g(res.spec, g);
  }
  s.log_mu = 0.5 * (std::log(4.0) - res.spec.log_beta - 2.0 * std::log(g) - log_growth);
  s.log_rho = s.log_radius_for_t(0.5 * g * g);
  s.log_rho1 = s.log_radius_for_t(g);
  return s;
}

struct ResidualReport {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double max_residual = 0.0;
  double argmax_r = 0.0;
  double gamma = 0.0;
};

namespace bubble_detail {

template <class F>
ResidualReport sup_over_grid(const RadialProfile& p, double r_lo, double r_hi, F&& residual) {
  ResidualReport rep;
  rep.r_lo = r_lo;
  rep.r_hi = r_hi;
  rep.gamma = p.gamma;
  const double x_lo = r_lo > 0.0 ? std::log(r_lo) : -std::numeric_limits<double>::infinity();
  const double x_hi = std::log(r_hi);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.x_grid[i];
    if (x < x_lo) continue;
    if (x > x_hi) break;
    any = true;
    const double e = residual(x, p.u_vals[i]);
    if (e > rep.max_residual) {
      rep.max_residual = e;
      rep.argmax_r = std::exp(x);
    }
  }
  if (!any) throw DomainError("residual window is empty");
  return rep;
}

}  // namespace bubble_detail

/// sup of |u - (gamma - t/gamma)| gamma^3 / (1 + t) for r <= min(r_window, rho).
/// The sup is the measured constant of the first-order inner expansion.
inline ResidualReport inner_residual_t1(const ShootingResult& res, double r_window) {
  const auto s = scales_for(res);
  const double g = res.gamma;
  return bubble_detail::sup_over_grid(res.profile, 0.0, std::min(r_window, s.rho()), [&](double x, double u) {
    const double t = s.t_at_x(x);
    return std::abs(u - (g - t / g)) * g * g * g / (1.0 + t);
  });
}

struct GTypeResiduals {
  ResidualReport inner;
  ResidualReport mid;
  double r_gamma = 0.0;  // u(r_gamma) = max(c0, a/2) + 1
};

/// Radius where the decreasing profile crosses `level` on (0, R_first).
inline double radius_at_level(const RadialProfile& p, double level) {
  std::size_t i = 0;
  while (i < p.size() && p.u_vals[i] > level) ++i;
  if (i == 0 || i == p.size()) throw DomainError("profile never crosses the requested level");
  double lo = p.x_grid[i - 1];
  double hi = p.x_grid[i];
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (p.u_at_x(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

/// Inner (second-order, with corrector) and mid-range residuals of the
/// g-type profile.
inline GTypeResiduals inner_residual_gtype(const ShootingResult& res, double a) {
  const auto s = scales_for(res);
  const double g = res.gamma;
  GTypeResiduals out;
  out.inner = bubble_detail::sup_over_grid(res.profile, 0.0, s.rho(), [&](double x, double u) {
    const double t = s.t_at_x(x);
    const double y = std::exp(x - s.log_mu);
    return std::abs(u - (g - t / g + a * S0(y) / (g * g))) * g * g * g / std::max(t, 1.0);
  });
  const double c1 = std::max(res.spec.c0, a / 2) + 1.0;
  out.r_gamma = radius_at_level(res.profile, c1);
  if (!(out.r_gamma > s.rho())) throw DomainError("mid-range window is empty (gamma too small)");
  const double stretch = 1.0 + a / (2.0 * g);
  out.mid = bubble_detail::sup_over_grid(res.profile, s.rho(), out.r_gamma, [&](double x, double u) {
    const double t = s.t_at_x(x);
    return std::abs(u - (g - (t / g) * stretch)) * g * g / t;
  });
  return out;
}

/// tau(y) = gamma (gamma - u(mu y)).
inline double tau_at(const ShootingResult& res, const BubbleScales& s, double y) {
  if (y <= 0.0) return res.gamma * (res.gamma - res.profile.gamma);
  return res.gamma * (res.gamma - res.profile.u_at_x(s.log_mu + std::log(y)));
}

/// sup over y in [0, y_max] (uniform sample) of |tau - T0|.
inline double tau_deviation(const ShootingResult& res, double y_max = 10.0, int samples = 2001) {
  const auto s = scales_for(res);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = y_max * i / (samples - 1);
    worst = std::max(worst, std::abs(tau_at(res, s, y) - T0(y)));
  }
  return worst;
}

/// sup over y in [0, y_max] of |gamma (tau - T0) + a S0|. The inner expansion
/// u = gamma - t/gamma + a S/gamma^2 gives tau = t - a S/gamma, so
/// gamma (tau - T0) tends to -a S0.
inline double second_order_deviation(const ShootingResult& res, double a, double y_max = 10.0,
                                     int samples = 2001) {
  const auto s = scales_for(res);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double y = y_max * i / (samples - 1);
    worst = std::max(worst, std::abs(res.gamma * (tau_at(res, s, y) - T0(y)) + a * S0(y)));
  }
  return worst;
}

/// 2 pi int_0^radius f(u) r dr by quadrature on the profile in log-radius.
inline double centered_mass(const RadialProfile& p, double radius, double rel_tol = 1e-10) {
  const double x_hi = std::log(radius);
  if (x_hi > p.x_end()) throw DomainError("centered_mass: radius beyond profile");
  std::vector<double> pts;
  pts.push_back(p.x_start);
  for (double x : p.x_grid) {
    if (x > p.x_start && x < x_hi) pts.push_back(x);
  }
  pts.push_back(x_hi);
  auto integrand = [&](double x) { return eval_f(p.spec, p.u_at_x(x)) * std::exp(2.0 * x); };
  const double body = quad::integrate(integrand, std::span<const double>(pts), {.rel_tol = rel_tol}).value;
  // Seed disk: f is constant to leading order, f(gamma) r_s^2 / 2 = 2 c r_s^2.
  const double c = p.seed_curvature;
  const double seed = c == 0.0 ? 0.0 : std::copysign(2.0 * std::exp(std::log(std::abs(c)) + 2.0 * p.x_start), c);
  return 2.0 * std::numbers::pi * (body + seed);
}

}  // namespace bubbleshoot
