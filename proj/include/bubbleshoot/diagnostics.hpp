#pragma once

// Energies, norms and asymptotic-law ratios of solved profiles.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "bubbleshoot/bubble.hpp"
#include "bubbleshoot/error.hpp"
#include "bubbleshoot/quadrature.hpp"
#include "bubbleshoot/shooting.hpp"
#include "bubbleshoot/special_functions.hpp"

namespace bubbleshoot {

namespace diag_detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Adaptive quadrature of h(x) over [x_start, x_hi] with the profile's
// step endpoints as initial panels.
template <class H>
double over_profile(const RadialProfile& p, double x_hi, double rel_tol, H&& h) {
  if (x_hi > p.x_end() + 1e-15) throw DomainError("profile truncated before r=" + std::to_string(std::exp(x_hi)));
  std::vector<double> pts;
  pts.reserve(p.size() + 1);
  pts.push_back(p.x_start);
  for (double x : p.x_grid) {
    if (x > p.x_start && x < x_hi) pts.push_back(x);
  }
  pts.push_back(std::min(x_hi, p.x_end()));
  return quad::integrate(h, std::span<const double>(pts), {.rel_tol = rel_tol, .abs_tol = 1e-300}).value;
}

}  // namespace diag_detail

/// 2 pi int_0^1 u'(r)^2 r dr. In log-radius u'(r)^2 r dr = (du/dx)^2 dx.
inline double dirichlet_energy(const RadialProfile& p, double rel_tol = 1e-10) {
  const double body = diag_detail::over_profile(p, 0.0, rel_tol, [&](double x) {
    const double w = p.eval_x(x)[1];
    return w * w;
  });
  // Seed disk: u' = -2 c r, so int_0^{r_s} 4 c^2 r^3 dr = c^2 r_s^4.
  const double c = std::abs(p.seed_curvature);
  const double seed = c > 0.0 ? std::exp(2.0 * std::log(c) + 4.0 * p.x_start) : 0.0;
  return diag_detail::kTwoPi * (body + seed);
}

/// (2 pi int_0^1 u^2 r dr)^{1/2}.
inline double l2_norm(const RadialProfile& p, double rel_tol = 1e-10) {
  const double body = diag_detail::over_profile(p, 0.0, rel_tol, [&](double x) {
    const double u = p.u_at_x(x);
    return u * u * std::exp(2.0 * x);
  });
  const double seed = 0.5 * p.gamma * p.gamma * std::exp(2.0 * p.x_start);
  return std::sqrt(diag_detail::kTwoPi * (body + seed));
}

/// 2 pi int_0^1 u (f(u) - lambda_bar u) r dr, the exponential part of
/// int u f(u); each integrand value is formed in the log domain.
inline double exponential_term_integral(const RadialProfile& p, double rel_tol = 1e-10) {
  const double body = diag_detail::over_profile(p, 0.0, rel_tol, [&](double x) {
    const double u = std::abs(p.u_at_x(x));
    if (u == 0.0) return 0.0;
    return std::exp(2.0 * x + log_exponential_term(p.spec, u) + std::log(u));
  });
  const double g = p.gamma;
  const double seed = 0.5 * std::exp(2.0 * p.x_start + log_exponential_term(p.spec, g) + std::log(g));
  return diag_detail::kTwoPi * (body + seed);
}

struct EnergyIdentity {
  double dirichlet = 0.0;
  double linear = 0.0;       // lambda_bar int u^2
  double exponential = 0.0;  // beta int u^2 e^{u^2} (or beta int u^2 g(u))
  double relative_error() const {
    return std::abs(dirichlet - (linear + exponential)) / std::abs(dirichlet);
  }
};

/// Both sides of int |grad u|^2 = lambda_bar int u^2 + beta int u^2 e^{u^2}.
inline EnergyIdentity energy_identity(const RadialProfile& p, double rel_tol = 1e-10) {
  EnergyIdentity id;
  id.dirichlet = dirichlet_energy(p, rel_tol);
  const double lam = p.spec.variant == Variant::AdimurthiDruet ? p.spec.lambda_bar : 0.0;
  const double l2 = l2_norm(p, rel_tol);
  id.linear = lam * l2 * l2;
  id.exponential = exponential_term_integral(p, rel_tol);
  return id;
}

/// sup over grid radii in [delta_out, 1] of |u - predicted|.
inline double weak_limit_deviation(const RadialProfile& p, const std::function<double(double)>& predicted,
                                   double delta_out = 0.2) {
  if (!(delta_out > 0.0 && delta_out < 1.0)) throw DomainError("delta_out must lie in (0, 1)");
  const double x_lo = std::log(delta_out);
  double worst = std::abs(p.u_at(1.0) - predicted(1.0));
  worst = std::max(worst, std::abs(p.u_at(delta_out) - predicted(delta_out)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.x_grid[i];
    if (x < x_lo) continue;
    if (x > 0.0) break;
    const double r = std::exp(x);
    worst = std::max(worst, std::abs(p.u_vals[i] - predicted(r)));
  }
  return worst;
}

/// max over grid radii in [r_lo, r_hi] of |u'' + u'/r + f(u)| with the
/// left side from centered differences of the interpolant in log-radius.
struct PdeResidual {
  double max_abs = 0.0;
  double max_f = 0.0;
  double relative() const { return max_f > 0.0 ? max_abs / max_f : max_abs; }
};

inline PdeResidual pde_residual(const RadialProfile& p, double r_lo, double r_hi, double h = 1e-3) {
  PdeResidual out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.max_f = std::max(out.max_f, std::abs(eval_f(p.spec, p.u_vals[i])));
  }
  const double x_lo = std::log(r_lo);
  const double x_hi = std::min(std::log(r_hi), p.x_end() - h);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double x = p.x_grid[i];
    if (x < x_lo || x - h < p.x_start) continue;
    if (x > x_hi) break;
    const double um = p.u_at_x(x - h);
    const double u0 = p.u_vals[i];
    const double up = p.u_at_x(x + h);
    // u'' + u'/r = e^{-2x} d2u/dx2
    const double lap = std::exp(-2.0 * x) * (up - 2.0 * u0 + um) / (h * h);
    out.max_abs = std::max(out.max_abs, std::abs(lap + eval_f(p.spec, u0)));
  }
  return out;
}

/// Predicted weak limit: v1 sqrt(l/lambda_1), v_k sqrt(l/lambda_k), or
/// (a / (2 v1(0))) v1 for the g-type family.
inline std::function<double(double)> predicted_limit(const ShootingResult& res) {
  switch (res.problem) {
    case Problem::Positive: {
      const double c = std::sqrt(res.l / lambda1());
      return [c](double r) { return c * eigenfunction(1, r); };
    }
    case Problem::Nodal: {
      const int k = res.k;
      const double c = std::sqrt(res.l / eigen_data(k).lambda_k);
      return [c, k](double r) { return c * eigenfunction(k, r); };
    }
    case Problem::GType: {
      const double c = res.a / (2.0 * v1_at_zero());
      return [c](double r) { return c * eigenfunction(1, r); };
    }
  }
  return {};
}

struct DiagnosticsReport {
  Problem problem = Problem::Positive;
  double gamma = 0.0;
  double lambda_bar = 0.0;
  double log_beta = 0.0;
  double beta = 0.0;
  double R_residual = 0.0;
  double dirichlet_energy = 0.0;
  double energy_target = 0.0;
  double energy_residual = 0.0;  // |energy - target|
  double l2_norm = 0.0;
  double l2_target = 0.0;
  double weak_limit_dev = 0.0;
  double tau_dev = 0.0;
  std::optional<double> identity_rel_error;
  std::optional<double> beta_law_ratio;
  std::optional<double> gap_law_ratio;
  std::optional<double> r_k_gamma;
  std::optional<ResidualReport> inner;
  std::optional<ResidualReport> mid;
  std::optional<double> second_order_dev;
  std::optional<double> mass_law;  // |mass - 4pi/gamma - 2pi a/gamma^2| gamma^3
  double centered_mass = 0.0;      // 2 pi int_0^{rho1} f(u) r dr
};

/// 4 pi + a^2 lambda_1 / (4 v1(0)^2): limiting energy of the g-type family.
inline double gtype_energy_target(double a) {
  const double v0 = v1_at_zero();
  return 4.0 * std::numbers::pi + a * a * lambda1() / (4.0 * v0 * v0);
}

inline DiagnosticsReport report(const ShootingResult& res, double quad_tol = 1e-10) {
  DiagnosticsReport d;
  d.problem = res.problem;
  d.gamma = res.gamma;
  d.lambda_bar = res.spec.variant == Variant::AdimurthiDruet ? res.spec.lambda_bar : 0.0;
  d.log_beta = res.spec.log_beta;
  d.beta = std::exp(res.spec.log_beta);
  d.R_residual = res.boundary_residual;

  const auto& p = res.profile;
  const auto id = energy_identity(p, quad_tol);
  d.dirichlet_energy = id.dirichlet;
  d.l2_norm = l2_norm(p, quad_tol);
  d.weak_limit_dev = weak_limit_deviation(p, predicted_limit(res));
  d.tau_dev = tau_deviation(res);

  const auto scales = scales_for(res);
  d.centered_mass = centered_mass(p, scales.rho1(), quad_tol);

  switch (res.problem) {
    case Problem::Positive: {
      d.energy_target = 4.0 * std::numbers::pi + res.l;
      d.l2_target = std::sqrt(res.l / lambda1());
      d.identity_rel_error = id.relative_error();
      d.beta_law_ratio = (-res.spec.log_beta / res.gamma) / (v1_at_zero() * std::sqrt(res.l / lambda1()));
      d.inner = inner_residual_t1(res, 1.0);
      break;
    }
    case Problem::Nodal: {
      const auto& ek = eigen_data(res.k);
      d.energy_target = 4.0 * std::numbers::pi + res.l;
      d.l2_target = std::sqrt(res.l / ek.lambda_k);
      d.identity_rel_error = id.relative_error();
      d.gap_law_ratio = (ek.lambda_k - res.spec.lambda_bar) * res.gamma /
                        (4.0 * std::numbers::pi * ek.norm_c * std::sqrt(ek.lambda_k / res.l));
      d.r_k_gamma = res.r_k_gamma;
      d.inner = inner_residual_t1(res, 1.0);
      break;
    }
    case Problem::GType: {
      d.energy_target = gtype_energy_target(res.a);
      d.l2_target = res.a / (2.0 * v1_at_zero());
      d.identity_rel_error = id.relative_error();
      d.second_order_dev = second_order_deviation(res, res.a);
      const double g = res.gamma;
      const double pi = std::numbers::pi;
      d.mass_law = std::abs(d.centered_mass - 4.0 * pi / g - 2.0 * pi * res.a / (g * g)) * g * g * g;
      try {
        const auto gr = inner_residual_gtype(res, res.a);
        d.inner = gr.inner;
        d.mid = gr.mid;
      } catch (const DomainError&) {
        // gamma too small for the expansion windows; left null.
      }
      break;
    }
  }
  d.energy_residual = std::abs(d.dirichlet_energy - d.energy_target);
  return d;
}

}  // namespace bubbleshoot
