#pragma once

// Radial initial-value problem u'' + u'/r = -f(u), u(0) = gamma, u'(0) = 0,
// integrated in log-radius x = ln r where it reads v'' = -e^{2x} f(v).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bubbleshoot/error.hpp"
#include "bubbleshoot/nonlinearity.hpp"

namespace bubbleshoot {

struct Zero {
  double r = 0.0;
  double du_dr = 0.0;
};

/// Dense radial solution. Grid points are the accepted integrator steps;
/// between them the solution is the quintic Hermite interpolant built from
/// u, du/dx and d2u/dx2. Below x_start the Taylor seed
/// u = gamma - seed_curvature r^2 is used.
struct RadialProfile {
  double gamma = 0.0;
  double x_start = 0.0;
  double seed_curvature = 0.0;  // f(gamma)/4 in the profile's own radius
  std::vector<double> x_grid;
  std::vector<double> u_vals;
  std::vector<double> du_dx_vals;
  std::vector<double> d2u_dx2_vals;
  std::vector<Zero> zeros;
  NonlinearitySpec spec;

  std::size_t size() const { return x_grid.size(); }
  double x_end() const { return x_grid.back(); }
  double r_end() const { return std::exp(x_grid.back()); }

  /// u and du/dx at log-radius x <= x_end().
  std::array<double, 2> eval_x(double x) const {
    if (x <= x_start) {
      const double r2 = std::exp(2.0 * x);
      return {gamma - seed_curvature * r2, -2.0 * seed_curvature * r2};
    }
    if (x > x_grid.back()) {
      throw DomainError("profile evaluated beyond its last radius");
    }
    auto it = std::upper_bound(x_grid.begin(), x_grid.end(), x);
    std::size_t i = static_cast<std::size_t>(it - x_grid.begin());
    if (i >= x_grid.size()) i = x_grid.size() - 1;
    return hermite(i - 1, x);
  }

  double u_at_x(double x) const { return eval_x(x)[0]; }

  /// u(r) for 0 <= r <= r_end().
  double u_at(double r) const {
    if (r <= 0.0) return gamma;
    return u_at_x(std::log(r));
  }

  /// du/dr at r > 0.
  double du_dr_at(double r) const { return eval_x(std::log(r))[1] / r; }

  /// u(s r): the profile of the dilated function, same x-derivatives.
  RadialProfile dilated(double s) const {
    RadialProfile p = *this;
    const double shift = std::log(s);
    p.x_start -= shift;
    for (double& x : p.x_grid) x -= shift;
    p.seed_curvature *= s * s;
    for (auto& z : p.zeros) {
      z.r /= s;
      z.du_dr *= s;
    }
    return p;
  }

 private:
  std::array<double, 2> hermite(std::size_t i, double x) const {
    const double h = x_grid[i + 1] - x_grid[i];
    const double t = (x - x_grid[i]) / h;
    const double c0 = u_vals[i];
    const double c1 = h * du_dx_vals[i];
    const double c2 = 0.5 * h * h * d2u_dx2_vals[i];
    const double A = u_vals[i + 1] - (c0 + c1 + c2);
    const double B = h * du_dx_vals[i + 1] - (c1 + 2.0 * c2);
    const double C = h * h * d2u_dx2_vals[i + 1] - 2.0 * c2;
    const double c3 = 10.0 * A - 4.0 * B + 0.5 * C;
    const double c4 = -15.0 * A + 7.0 * B - C;
    const double c5 = 6.0 * A - 3.0 * B + 0.5 * C;
    const double u = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
    const double du = c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)));
    return {u, du / h};
  }
};

struct IntegrateOptions {
  /// Stop once this many zeros have been recorded (negative: never).
  int max_zeros = -1;
  double max_step = 0.1;
  std::size_t max_points = 20000;
  std::optional<double> x_start{};
};

/// Start abscissa ln(mu) - 8 with mu^2 = 4 / (gamma max(f(gamma), lambda_bar gamma + 1)).
inline double x_start_for(const NonlinearitySpec& spec, double gamma) {
  const double f = eval_f(spec, gamma);
  const double lin = (spec.variant == Variant::AdimurthiDruet ? spec.lambda_bar : 0.0) * gamma + 1.0;
  const double log_mu = 0.5 * (std::log(4.0) - std::log(gamma) - std::log(std::max(f, lin)));
  return log_mu - 8.0;
}

namespace ode_detail {

struct State {
  double v;
  double w;
};

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

class Stepper {
 public:
  explicit Stepper(const NonlinearitySpec& spec) : spec_(spec) {}

  State rhs(double x, const State& y) const { return {y.w, -std::exp(2.0 * x) * eval_f(spec_, y.v)}; }

  // One trial step; returns the 5th-order solution, its rhs (FSAL) and the error norm.
  struct Trial {
    State y;
    State k7;
    double err;
  };

  Trial step(double x, const State& y, const State& k1, double h, double tol) const {
    auto at = [&](double a, double b, double c, double d, double e, const State& s2,
                  const State& s3, const State& s4, const State& s5) {
      return State{y.v + h * (a * k1.v + b * s2.v + c * s3.v + d * s4.v + e * s5.v),
                   y.w + h * (a * k1.w + b * s2.w + c * s3.w + d * s4.w + e * s5.w)};
    };
    const State zero{0.0, 0.0};
    const State k2 = rhs(x + c2 * h, at(a21, 0, 0, 0, 0, zero, zero, zero, zero));
    const State k3 = rhs(x + c3 * h, at(a31, a32, 0, 0, 0, k2, zero, zero, zero));
    const State k4 = rhs(x + c4 * h, at(a41, a42, a43, 0, 0, k2, k3, zero, zero));
    const State k5 = rhs(x + c5 * h, at(a51, a52, a53, a54, 0, k2, k3, k4, zero));
    const State y6 = at(a61, a62, a63, a64, a65, k2, k3, k4, k5);
    const State k6 = rhs(x + h, y6);
    const State y5{y.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v),
                   y.w + h * (b1 * k1.w + b3 * k3.w + b4 * k4.w + b5 * k5.w + b6 * k6.w)};
    const State k7 = rhs(x + h, y5);
    const double ev = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double ew = h * (e1 * k1.w + e3 * k3.w + e4 * k4.w + e5 * k5.w + e6 * k6.w + e7 * k7.w);
    const double sv = tol * std::max(1.0, std::max(std::abs(y.v), std::abs(y5.v)));
    const double sw = tol * std::max(1.0, std::max(std::abs(y.w), std::abs(y5.w)));
    const double err = std::max(std::abs(ev) / sv, std::abs(ew) / sw);
    return {y5, k7, err};
  }

 private:
  const NonlinearitySpec& spec_;
};

// Levels of |u| where f is only continuous (g-type switch points). Steps are
// cut to end exactly on them so no step straddles a derivative jump.
inline std::vector<double> kink_levels(const NonlinearitySpec& spec) {
  if (spec.variant != Variant::GType) return {};
  std::vector<double> out{spec.c0};
  if (spec.floor == GFloor::LinearRamp) out.push_back(spec.a / 2);
  return out;
}

// Shortest h' in (0, h] whose step from (x, y) ends with |v| on a kink level
// crossed by the trial step `full`; Illinois regula falsi on h'.
inline std::optional<Stepper::Trial> cut_at_kink(const Stepper& st, double x, const State& y, const State& k1,
                                                 double h, double tol, const Stepper::Trial& full,
                                                 const std::vector<double>& levels, double& h_cut) {
  double best_h = h;
  double best_level = 0.0;
  bool found = false;
  for (double L : levels) {
    const double g0 = std::abs(y.v) - L;
    const double g1 = std::abs(full.y.v) - L;
    // a step that starts on the level has already been cut there
    if (std::abs(g0) <= 1e-12 * L || (g0 > 0.0) == (g1 > 0.0)) continue;
    // linear guess of where the level is crossed, to pick the first one
    const double frac = g0 / (g0 - g1);
    if (!found || frac * h < best_h) {
      best_h = frac * h;
      best_level = L;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  const double L = best_level;
  double lo = 0.0, glo = std::abs(y.v) - L;
  double hi = h, ghi = std::abs(full.y.v) - L;
  Stepper::Trial t = full;
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    double hm = (lo * ghi - hi * glo) / (ghi - glo);
    if (!(hm > lo && hm < hi)) hm = 0.5 * (lo + hi);
    t = st.step(x, y, k1, hm, tol);
    const double gm = std::abs(t.y.v) - L;
    h_cut = hm;
    if (std::abs(gm) <= 4e-16 * L || hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) break;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = hm;
      glo = gm;
      if (side == -1) ghi *= 0.5;
      side = -1;
    } else {
      hi = hm;
      ghi = gm;
      if (side == 1) glo *= 0.5;
      side = 1;
    }
  }
  return t;
}

// Bisection for the zero of the interpolant between grid points i and i+1.
inline Zero locate_zero(const RadialProfile& p, std::size_t i) {
  double lo = p.x_grid[i];
  double hi = p.x_grid[i + 1];
  const bool lo_positive = p.u_vals[i] > 0.0;
  const double target = 1e-13 * std::abs(p.gamma);
  double x = hi;
  for (int it = 0; it < 200; ++it) {
    x = 0.5 * (lo + hi);
    if (x <= lo || x >= hi) break;
    const double u = p.u_at_x(x);
    if (std::abs(u) <= target && hi - lo < 1e-15 * std::max(1.0, std::abs(x))) break;
    if (u == 0.0) break;
    if ((u > 0.0) == lo_positive) {
      lo = x;
    } else {
      hi = x;
    }
  }
  const auto ud = p.eval_x(x);
  const double r = std::exp(x);
  return {r, ud[1] / r};
}

inline void thin(RadialProfile& p, std::size_t max_points) {
  const std::size_t n = p.x_grid.size();
  if (n <= max_points || max_points < 2) return;
  const std::size_t stride = (n + max_points - 2) / (max_points - 1);
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; i += stride) {
    p.x_grid[out] = p.x_grid[i];
    p.u_vals[out] = p.u_vals[i];
    p.du_dx_vals[out] = p.du_dx_vals[i];
    p.d2u_dx2_vals[out] = p.d2u_dx2_vals[i];
    ++out;
  }
  if ((n - 1) % stride != 0) {
    p.x_grid[out] = p.x_grid[n - 1];
    p.u_vals[out] = p.u_vals[n - 1];
    p.du_dx_vals[out] = p.du_dx_vals[n - 1];
    p.d2u_dx2_vals[out] = p.d2u_dx2_vals[n - 1];
    ++out;
  }
  p.x_grid.resize(out);
  p.u_vals.resize(out);
  p.du_dx_vals.resize(out);
  p.d2u_dx2_vals.resize(out);
}

}  // namespace ode_detail

/// Integrates from the Taylor seed at x_start to r_max with an adaptive
/// Dormand-Prince 5(4) pair, recording sign changes of u as zeros.
inline RadialProfile integrate(const NonlinearitySpec& spec, double gamma, double r_max,
                               double tol = 1e-12, const IntegrateOptions& opt = {}) {
  if (!(gamma > 0.0)) throw ConfigError("integrate: gamma must be positive");
  if (!(r_max > 0.0)) throw ConfigError("integrate: r_max must be positive");
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw ConfigError("integrate: tol outside [1e-14, 1e-6]");

  RadialProfile p;
  p.gamma = gamma;
  p.spec = spec;
  const double f_gamma = eval_f(spec, gamma);
  p.seed_curvature = 0.25 * f_gamma;
  p.x_start = opt.x_start.value_or(x_start_for(spec, gamma));
  const double x_end = std::log(r_max);
  if (!(p.x_start < x_end)) throw ConfigError("integrate: r_max below the seed radius");

  const ode_detail::Stepper stepper(spec);
  const auto kinks = ode_detail::kink_levels(spec);
  double x = p.x_start;
  const double r2 = std::exp(2.0 * x);
  ode_detail::State y{gamma - 0.25 * f_gamma * r2, -0.5 * f_gamma * r2};
  ode_detail::State k1 = stepper.rhs(x, y);

  auto record = [&](double xx, const ode_detail::State& s, const ode_detail::State& d) {
    p.x_grid.push_back(xx);
    p.u_vals.push_back(s.v);
    p.du_dx_vals.push_back(s.w);
    p.d2u_dx2_vals.push_back(d.w);
  };
  record(x, y, k1);

  double h = std::min(opt.max_step, 1e-2);
  while (x < x_end) {
    bool last = false;
    if (x + h >= x_end) {
      h = x_end - x;
      last = true;
    }
    const auto trial = stepper.step(x, y, k1, h, tol);
    if (!std::isfinite(trial.err) || !std::isfinite(trial.y.v) || !std::isfinite(trial.y.w)) {
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        throw IntegratorError("integrator produced non-finite state", x);
      }
      h *= 0.25;
      continue;
    }
    if (trial.err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(trial.err, -0.2));
      if (h < 1e-14 * std::max(1.0, std::abs(x))) {
        throw IntegratorError("step size underflow", x);
      }
      continue;
    }
    double h_taken = h;
    std::optional<ode_detail::Stepper::Trial> cut;
    if (!kinks.empty()) cut = ode_detail::cut_at_kink(stepper, x, y, k1, h, tol, trial, kinks, h_taken);
    if (cut) {
      x += h_taken;
      y = cut->y;
      k1 = cut->k7;
    } else {
      x = last ? x_end : x + h;
      y = trial.y;
      k1 = trial.k7;
    }
    record(x, y, k1);

    const std::size_t n = p.x_grid.size();
    const double u_prev = p.u_vals[n - 2];
    if (u_prev != 0.0 && (y.v == 0.0 || (y.v > 0.0) != (u_prev > 0.0))) {
      p.zeros.push_back(ode_detail::locate_zero(p, n - 2));
      if (opt.max_zeros >= 0 && static_cast<int>(p.zeros.size()) >= opt.max_zeros) break;
    }
    const double growth = trial.err > 0.0 ? 0.9 * std::pow(trial.err, -0.2) : 5.0;
    h = std::min(opt.max_step, h * std::clamp(growth, 0.2, 5.0));
  }
  ode_detail::thin(p, opt.max_points);
  return p;
}

/// Lyapunov function along the profile grid: u_r^2 + lambda u^2 + beta e^{u^2}
/// for lambda_bar u + beta u e^{u^2}, u_r^2/2 + F(u) for g-type.
inline std::vector<double> energy_monitor(const RadialProfile& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = std::exp(p.x_grid[i]);
    const double ur = p.du_dx_vals[i] / r;
    const double u = p.u_vals[i];
    if (p.spec.variant == Variant::AdimurthiDruet) {
      const double e = p.spec.log_beta + u * u;
      out.push_back(ur * ur + p.spec.lambda_bar * u * u + std::exp(e));
    } else {
      out.push_back(0.5 * ur * ur + primitive_f(p.spec, u));
    }
  }
  return out;
}

/// CSV with header r,u,du_dr, ascending radii, 17 significant digits.
inline void write_profile_csv(std::ostream& os, const RadialProfile& p) {
  os << "r,u,du_dr\n";
  char buf[128];
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = std::exp(p.x_grid[i]);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r, p.u_vals[i], p.du_dx_vals[i] / r);
    os << buf;
  }
}

}  // namespace bubbleshoot
