#pragma once

// Shooting on the radial problem: log(beta) is tuned so the first zero of
// the solution lands on r = 1 (positive and nodal lambda_bar u + beta u e^{u^2} families),
// or the free first zero is scaled to 1 (g-type family).

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bubbleshoot/error.hpp"
#include "bubbleshoot/nonlinearity.hpp"
#include "bubbleshoot/radial_ode.hpp"
#include "bubbleshoot/special_functions.hpp"

namespace bubbleshoot {

enum class Problem { Positive, Nodal, GType };

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::Positive:
      return "t1";
    case Problem::Nodal:
      return "nodal";
    case Problem::GType:
      return "gtype";
  }
  return "?";
}

struct SolverTolerances {
  double ode_tol = 1e-12;
  double shoot_tol_R = 1e-10;
  double quad_tol = 1e-10;
};

/// Excess energy l and center value gamma; the linear coefficient is
/// lambda_1 - epsilon with epsilon = (4 pi v1(0) / gamma) sqrt(lambda_1 / l).
struct TheoremOneConfig {
  double l = 1.0;
  double gamma = 0.0;

  double epsilon() const {
    return 4.0 * std::numbers::pi * v1_at_zero() / gamma * std::sqrt(lambda1() / l);
  }
  double lambda_bar() const { return lambda1() - epsilon(); }

  void validate() const {
    if (!(l > 0.0)) throw ConfigError("excess energy l must be positive");
    if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
    if (!(lambda_bar() > 0.0)) {
      throw ConfigError("lambda_bar = " + std::to_string(lambda_bar()) + " <= 0 at gamma=" +
                        std::to_string(gamma) + ", l=" + std::to_string(l) +
                        "; increase gamma");
    }
  }
};

struct BracketStep {
  double log_beta = 0.0;
  double R = 0.0;
};

struct ShootingResult {
  Problem problem = Problem::Positive;
  NonlinearitySpec spec;
  double gamma = 0.0;
  RadialProfile profile;
  double R_first = 0.0;
  double boundary_residual = 0.0;
  std::vector<BracketStep> bracket_trace;
  std::vector<Zero> k_zeros;
  // Problem parameters, NaN where inapplicable.
  double l = std::numeric_limits<double>::quiet_NaN();
  int k = 1;
  double a = std::numeric_limits<double>::quiet_NaN();
  // Nodal construction: the positive solution before dilation.
  double lambda_tilde = std::numeric_limits<double>::quiet_NaN();
  double log_beta_tilde = std::numeric_limits<double>::quiet_NaN();
  double r_k_gamma = std::numeric_limits<double>::quiet_NaN();
  // Whether r_{k,gamma} lies within half the gap to the neighbouring r_n.
  bool in_window = true;

  double beta() const { return std::exp(spec.log_beta); }
};

/// First zero R_beta of the solution with u(0) = gamma.
inline double first_zero_of_beta(double lambda_bar, double gamma, double log_beta,
                                 double ode_tol = 1e-12) {
  if (!(lambda_bar > 0.0)) throw ConfigError("first_zero_of_beta: lambda_bar must be positive");
  const double r0 = std::sqrt(lambda1() / lambda_bar);
  const auto spec = NonlinearitySpec::adimurthi_druet(lambda_bar, log_beta);
  // Integration stops at the first zero, so extending r_max from 1.5 r0 by
  // doubling is the same as integrating once against the 10 r0 cap.
  const auto p = integrate(spec, gamma, 10.0 * r0, ode_tol, {.max_zeros = 1});
  if (p.zeros.empty()) {
    throw IntegratorError("no zero found below " + std::to_string(10.0 * r0), p.x_end());
  }
  return p.zeros.front().r;
}

namespace shooting_detail {

inline bool positive_before(const RadialProfile& p, double r) {
  const double xr = std::log(r);
  for (std::size_t i = 0; i < p.size() && p.x_grid[i] < xr; ++i) {
    if (!(p.u_vals[i] > 0.0)) return false;
  }
  return true;
}

// Bracket scan from the asymptotic seed, then bisection in log beta.
inline double shoot_log_beta(double lambda_bar, double gamma, double seed,
                             const SolverTolerances& tol, std::vector<BracketStep>& trace) {
  auto R_of = [&](double lb) {
    const double R = first_zero_of_beta(lambda_bar, gamma, lb, tol.ode_tol);
    trace.push_back({lb, R});
    return R;
  };
  const double R_seed = R_of(seed);
  if (std::abs(R_seed - 1.0) <= tol.shoot_tol_R) return seed;
  // R decreases as beta grows: R > 1 means beta is too small.
  const double dir = R_seed > 1.0 ? 1.0 : -1.0;
  double lb_prev = seed;
  double R_prev = R_seed;
  double lb_next = seed;
  double R_next = R_seed;
  bool found = false;
  for (int i = 1; i <= 60; ++i) {
    lb_next = seed + dir * i;
    R_next = R_of(lb_next);
    if ((R_next > 1.0) != (R_prev > 1.0)) {
      found = true;
      break;
    }
    lb_prev = lb_next;
    R_prev = R_next;
  }
  if (!found) {
    throw ShootingError("bracket not found after 60 scan steps from log_beta=" + std::to_string(seed));
  }
  // lo keeps R > 1, hi keeps R < 1.
  double lo = R_prev > 1.0 ? lb_prev : lb_next;
  double hi = R_prev > 1.0 ? lb_next : lb_prev;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double R = R_of(mid);
    if (std::abs(R - 1.0) <= tol.shoot_tol_R) return mid;
    if (R > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ShootingError("bisection in log_beta stagnated in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
}

inline void finish_on_unit_disk(ShootingResult& res, double ode_tol) {
  res.profile = integrate(res.spec, res.gamma, 1.05, ode_tol);
  if (res.profile.zeros.empty()) throw ShootingError("final profile lost its zero");
  res.R_first = res.profile.zeros.front().r;
  res.k_zeros = res.profile.zeros;
  res.boundary_residual = std::abs(res.profile.u_at(1.0));
  if (!(res.boundary_residual <= 1e-10 * res.gamma)) {
    throw ShootingError("boundary residual " + std::to_string(res.boundary_residual) +
                        " above 1e-10 gamma");
  }
}

}  // namespace shooting_detail

/// Positive solution with first zero at r = 1. Seeds log beta from the
/// asymptotic law log(1/beta)/gamma ~ v1(0) sqrt(l/lambda_1).
inline ShootingResult solve_theorem1(const TheoremOneConfig& cfg, const SolverTolerances& tol = {}) {
  cfg.validate();
  const double lambda_bar = cfg.lambda_bar();
  const double seed = -cfg.gamma * v1_at_zero() * std::sqrt(cfg.l / lambda1());
  ShootingResult res;
  res.problem = Problem::Positive;
  res.gamma = cfg.gamma;
  res.l = cfg.l;
  const double lb = shooting_detail::shoot_log_beta(lambda_bar, cfg.gamma, seed, tol, res.bracket_trace);
  res.spec = NonlinearitySpec::adimurthi_druet(lambda_bar, lb);
  shooting_detail::finish_on_unit_disk(res, tol.ode_tol);
  if (!shooting_detail::positive_before(res.profile, res.R_first)) {
    throw ShootingError("solution is not positive before its first zero");
  }
  return res;
}

/// Nodal solution with k nodal regions: the positive solution for
/// l / alpha_k is continued to its k-th zero r_{k,gamma} and dilated by it.
/// Throws ConfigError when the shifted linear coefficient is not positive.
inline ShootingResult solve_nodal(double l, int k, double gamma, const SolverTolerances& tol = {}) {
  if (k < 2 || k > 5) throw ConfigError("solve_nodal: k must lie in [2, 5]");
  const auto& ek = eigen_data(k);
  const double r_prev = eigen_data(k - 1).r_k;
  const double r_next = eigen_data(k + 1).r_k;
  const TheoremOneConfig cfg{l / ek.alpha_k, gamma};
  auto base = solve_theorem1(cfg, tol);

  const double window_lo = ek.r_k - 0.5 * (ek.r_k - r_prev);
  const double window_hi = ek.r_k + 0.5 * (r_next - ek.r_k);
  // The k-th zero converges to r_k only like 1/gamma, so it is searched for
  // without a window; window membership is reported.
  const double cap = 10.0 * ek.r_k * std::sqrt(lambda1() / base.spec.lambda_bar);
  const auto probe = integrate(base.spec, gamma, cap, tol.ode_tol, {.max_zeros = k});
  if (static_cast<int>(probe.zeros.size()) < k) {
    throw ShootingError("only " + std::to_string(probe.zeros.size()) + " zeros before r=" +
                        std::to_string(cap));
  }
  const double rkg = probe.zeros[k - 1].r;
  const auto extended = integrate(base.spec, gamma, 1.05 * rkg, tol.ode_tol);
  if (static_cast<int>(extended.zeros.size()) < k) {
    throw ShootingError("k-th zero lost on re-integration");
  }

  ShootingResult res;
  res.problem = Problem::Nodal;
  res.gamma = gamma;
  res.l = l;
  res.k = k;
  res.lambda_tilde = base.spec.lambda_bar;
  res.log_beta_tilde = base.spec.log_beta;
  res.r_k_gamma = rkg;
  res.in_window = rkg > window_lo && rkg < window_hi;
  res.bracket_trace = std::move(base.bracket_trace);
  res.spec = NonlinearitySpec::adimurthi_druet(rkg * rkg * base.spec.lambda_bar,
                                               base.spec.log_beta + 2.0 * std::log(rkg));
  res.profile = extended.dilated(rkg);
  res.profile.spec = res.spec;
  res.k_zeros = res.profile.zeros;
  res.R_first = res.k_zeros.front().r;
  res.boundary_residual = std::abs(res.profile.u_at(1.0));
  if (!(res.boundary_residual <= 1e-10 * gamma)) {
    throw ShootingError("nodal boundary residual " + std::to_string(res.boundary_residual) +
                        " above 1e-10 gamma");
  }
  return res;
}

/// Unique positive solution of Delta u = beta u g(u): integrate with beta = 1
/// to the first zero R and dilate, giving beta = R^2.
inline ShootingResult solve_gtype(double a, double gamma, GFloor floor = GFloor::Constant,
                                  double c0 = std::numeric_limits<double>::quiet_NaN(),
                                  const SolverTolerances& tol = {}) {
  if (!(gamma > 0.0)) throw ConfigError("gamma must be positive");
  const auto unit = NonlinearitySpec::g_type(a, 0.0, floor, c0);
  const double cap = 4.0 * std::sqrt(lambda1());
  const auto probe = integrate(unit, gamma, cap, tol.ode_tol, {.max_zeros = 1});
  if (probe.zeros.empty()) throw IntegratorError("g-type solution has no zero", probe.x_end());
  const double R = probe.zeros.front().r;
  const auto full = integrate(unit, gamma, 1.05 * R, tol.ode_tol);

  ShootingResult res;
  res.problem = Problem::GType;
  res.gamma = gamma;
  res.a = a;
  res.spec = unit.with_log_beta(2.0 * std::log(R));
  res.bracket_trace.push_back({0.0, R});
  res.profile = full.dilated(R);
  res.profile.spec = res.spec;
  res.k_zeros = res.profile.zeros;
  res.R_first = res.k_zeros.front().r;
  res.boundary_residual = std::abs(res.R_first - 1.0);
  return res;
}

}  // namespace bubbleshoot
