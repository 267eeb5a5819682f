#pragma once

// End-to-end acceptance run: eight criteria, one PASS/FAIL line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bubbleshoot/diagnostics.hpp"
#include "bubbleshoot/quadrature.hpp"
#include "bubbleshoot/radial_ode.hpp"
#include "bubbleshoot/special_functions.hpp"
#include "bubbleshoot/sweep.hpp"

namespace bubbleshoot {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget = 0.0;  // 0: no runtime limit
  std::vector<std::string> failures;
  std::string detail;
};

namespace acceptance_detail {

using Clock = std::chrono::steady_clock;

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string join(const std::vector<double>& v, const char* f = "%.4g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(f, v[i]);
  return s;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

inline double max_over_min(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// Independent J0 zero: long-double power series plus plain bisection.
inline long double j0_series(long double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = -x * x / 4.0L;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
  }
  return sum;
}

inline double j0_zero_oracle(int k) {
  long double lo = (k - 0.25L) * std::numbers::pi_v<long double>;
  long double hi = lo + 0.5L;
  lo -= 0.5L;
  for (int i = 0; i < 200 && hi - lo > 1e-18L; ++i) {
    const long double mid = 0.5L * (lo + hi);
    ((j0_series(lo) > 0) == (j0_series(mid) > 0) ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

class Checker {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  std::vector<std::string> failures;
};

inline CriterionResult run(int id, std::string name, double budget,
                           const std::function<std::string(Checker&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget = budget;
  Checker c;
  const auto t0 = Clock::now();
  try {
    r.detail = body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget > 0 && r.seconds > budget) c.failures.push_back("runtime " + fmt("%.2f", r.seconds) + " s");
  r.failures = std::move(c.failures);
  r.pass = r.failures.empty();
  return r;
}

inline std::vector<double> collect(const std::vector<SweepRow>& rows,
                                   const std::function<double(const SweepRow&)>& f) {
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.ok()) v.push_back(f(r));
  }
  return v;
}

inline std::string csv_of(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_sweep_csv(os, rows);
  return os.str();
}

}  // namespace acceptance_detail

struct AcceptanceSweeps {
  static constexpr double kT1[] = {6, 8, 10, 12};
  static constexpr double kNodal[] = {8, 10, 12};
  static constexpr double kGType[] = {6, 9, 12};

  static SweepParams t1() { return {.problem = Problem::Positive, .l = 1.0}; }
  static SweepParams nodal() { return {.problem = Problem::Nodal, .l = 1.0, .k = 2}; }
  static SweepParams gtype() { return {.problem = Problem::GType, .a = 2.0}; }
};

/// Runs every criterion, prints one line each to `out`. With a non-empty
/// out_dir the three sweep tables are written there as CSV.
inline std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::string& out_dir = "") {
  using namespace acceptance_detail;
  constexpr double pi = std::numbers::pi;
  std::vector<CriterionResult> results;

  results.push_back(run(1, "eigen oracle", 1.0, [](Checker& c) {
    std::vector<double> errs;
    for (int k = 1; k <= 3; ++k) {
      const double e = std::abs(bessel_zero(k) - j0_zero_oracle(k));
      errs.push_back(e);
      c.check(e <= 1e-12, "j0," + std::to_string(k) + " off by " + fmt("%.3g", e));
    }
    const auto norm = quad::integrate(
        [](double r) {
          const double v = eigenfunction(1, r);
          return 2 * pi * v * v * r;
        },
        0.0, 1.0, {.rel_tol = 1e-13, .abs_tol = 1e-15});
    c.check(std::abs(norm.value - 1.0) <= 1e-10, "norm " + fmt("%.15g", norm.value));
    return "zero errors " + join(errs, "%.2g") + ", |v1|^2 = " + fmt("%.13f", norm.value);
  }));

  results.push_back(run(2, "integrator round-trip", 5.0, [](Checker& c) {
    const auto spec = NonlinearitySpec::adimurthi_druet(lambda1(), kNoExponential);
    const auto p = integrate(spec, v1_at_zero(), 3.0);
    double worst = 0.0;
    for (int i = 0; i <= 3000; ++i) {
      const double r = 0.001 * i;
      worst = std::max(worst, std::abs(p.u_at(r) - vbar1(r)));
    }
    c.check(worst <= 1e-8, "sup error " + fmt("%.3g", worst));
    std::string conv;
    for (double tol : {1e-8, 1e-10}) {
      const double a = integrate(spec, v1_at_zero(), 1.05, tol).u_at(1.0);
      const double b = integrate(spec, v1_at_zero(), 1.05, tol / 2).u_at(1.0);
      c.check(std::abs(a - b) <= 50 * tol, "halving tol=" + fmt("%.0e", tol) + " moved u(1) by " +
                                               fmt("%.3g", std::abs(a - b)));
      conv += " " + fmt("%.2g", std::abs(a - b));
    }
    return "sup error " + fmt("%.2g", worst) + ", tol-halving shifts" + conv;
  }));

  std::vector<SweepRow> t1_rows, nodal_rows, g_rows;

  results.push_back(run(3, "positive solutions, l=1", 60.0, [&](Checker& c) {
    t1_rows = run_sweep(AcceptanceSweeps::t1(), AcceptanceSweeps::kT1);
    for (const auto& r : t1_rows) {
      if (!r.ok()) {
        c.check(false, "gamma=" + fmt("%g", r.gamma) + " failed: " + r.error);
        continue;
      }
      c.check(std::abs(r.result->profile.u_at(1.0)) <= 1e-10 * r.gamma, "|u(1)| at gamma=" + fmt("%g", r.gamma));
      c.check(*r.report->identity_rel_error <= 1e-7, "energy identity at gamma=" + fmt("%g", r.gamma));
    }
    const auto eres = collect(t1_rows, [](const SweepRow& r) { return r.report->energy_residual; });
    const auto l2 = collect(t1_rows, [](const SweepRow& r) { return std::abs(r.report->l2_norm - r.report->l2_target); });
    const auto law = collect(t1_rows, [](const SweepRow& r) { return std::abs(*r.report->beta_law_ratio - 1.0); });
    const auto lb = collect(t1_rows, [](const SweepRow& r) { return r.report->log_beta; });
    c.check(strictly_decreasing(eres), "energy residual not decreasing");
    c.check(!eres.empty() && eres.back() < 1.0, "energy residual at gamma=12 not < 1");
    c.check(strictly_decreasing(l2), "l2 residual not decreasing");
    c.check(strictly_decreasing(law), "|beta_law_ratio - 1| not decreasing");
    c.check(law.size() == 4 && law.back() < law.front(), "|beta_law_ratio - 1| at 12 not below 6");
    c.check(strictly_decreasing(lb), "beta not decreasing");
    return "energy res " + join(eres) + "; l2 res " + join(l2) + "; |law-1| " + join(law);
  }));

  results.push_back(run(4, "bubble expansion", 0.0, [&](Checker& c) {
    const auto tau = collect(t1_rows, [](const SweepRow& r) { return r.report->tau_dev; });
    const auto inner = collect(t1_rows, [](const SweepRow& r) { return r.report->inner->max_residual; });
    c.check(tau.size() == 4, "missing solves");
    c.check(strictly_decreasing(tau), "sup|tau - T0| not decreasing");
    c.check(inner.size() == 4 && max_over_min({inner.front(), inner.back()}) <= 3.0,
            "scaled inner residual ratio 12/6 exceeds 3");
    return "sup|tau-T0| " + join(tau) + "; scaled inner " + join(inner);
  }));

  results.push_back(run(5, "nodal solutions, k=2", 90.0, [&](Checker& c) {
    nodal_rows = run_sweep(AcceptanceSweeps::nodal(), AcceptanceSweeps::kNodal);
    std::string skipped;
    std::vector<SweepRow> acc;
    for (const auto& r : nodal_rows) {
      if (r.ok()) {
        acc.push_back(r);
      } else if (r.gamma == 8.0) {
        // below gamma ~ 8.54 the rescaled problem has lambda_tilde <= 0
        skipped = " (gamma=8 rejected: " + r.error + ")";
      } else {
        c.check(false, "gamma=" + fmt("%g", r.gamma) + " failed: " + r.error);
      }
    }
    c.check(acc.size() >= 2, "fewer than two accepted solves");
    for (const auto& r : acc) {
      int regions = 0, prev = 0;
      const auto& p = r.result->profile;
      for (std::size_t i = 0; i < p.size() && p.x_grid[i] < -1e-9; ++i) {
        const int s = p.u_vals[i] > 0 ? 1 : (p.u_vals[i] < 0 ? -1 : 0);
        if (s != 0 && s != prev) ++regions, prev = s;
      }
      c.check(regions == 2, "gamma=" + fmt("%g", r.gamma) + " has " + std::to_string(regions) + " nodal regions");
    }
    const double r2 = eigen_data(2).r_k;
    const auto dr = collect(acc, [&](const SweepRow& r) { return std::abs(*r.report->r_k_gamma - r2); });
    const auto gap = collect(acc, [](const SweepRow& r) { return std::abs(*r.report->gap_law_ratio - 1.0); });
    const auto eres = collect(acc, [](const SweepRow& r) { return r.report->energy_residual; });
    c.check(strictly_decreasing(dr), "|r_2,gamma - r_2| not decreasing");
    c.check(strictly_decreasing(gap), "|gap_law_ratio - 1| not decreasing");
    c.check(strictly_decreasing(eres), "energy residual not decreasing");
    return "|r2g-r2| " + join(dr) + "; |gap-1| " + join(gap) + "; energy res " + join(eres) + skipped;
  }));

  results.push_back(run(6, "g-type, a=2", 60.0, [&](Checker& c) {
    const double a = 2.0;
    const auto anchor = solve_gtype(a, a / 2);
    const double dbeta = std::abs(anchor.beta() - lambda1());
    const double cc = a / (2 * v1_at_zero());
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = 0.001 * i;
      worst = std::max(worst, std::abs(anchor.profile.u_at(r) - cc * eigenfunction(1, r)));
    }
    c.check(dbeta <= 1e-8, "anchor beta off by " + fmt("%.3g", dbeta));
    c.check(worst <= 1e-8, "anchor profile off by " + fmt("%.3g", worst));

    g_rows = run_sweep(AcceptanceSweeps::gtype(), AcceptanceSweeps::kGType);
    for (const auto& r : g_rows) c.check(r.ok(), "gamma=" + fmt("%g", r.gamma) + " failed: " + r.error);
    const auto db = collect(g_rows, [](const SweepRow& r) { return std::abs(r.report->beta - lambda1()); });
    const auto eres = collect(g_rows, [](const SweepRow& r) { return r.report->energy_residual; });
    const auto sod = collect(g_rows, [](const SweepRow& r) { return *r.report->second_order_dev; });
    const auto mass = collect(g_rows, [](const SweepRow& r) { return *r.report->mass_law; });
    c.check(strictly_decreasing(db), "|beta - lambda_1| not decreasing");
    c.check(strictly_decreasing(eres), "|energy - 17.4630| not decreasing");
    c.check(strictly_decreasing(sod), "second-order bubble deviation not decreasing");
    c.check(mass.size() == 3 && std::all_of(mass.begin(), mass.end(), [](double m) { return std::isfinite(m); }) &&
                max_over_min(mass) <= 3.0,
            "mass law not bounded");
    return "anchor " + fmt("%.2g", dbeta) + "/" + fmt("%.2g", worst) + "; |beta-l1| " + join(db) + "; energy res " +
           join(eres) + "; 2nd order " + join(sod) + "; mass*g^3 " + join(mass);
  }));

  results.push_back(run(7, "profile PDE residual", 0.0, [&](Checker& c) {
    double worst = 0.0;
    int n = 0;
    for (const auto* rows : {&t1_rows, &nodal_rows, &g_rows}) {
      for (const auto& r : *rows) {
        if (!r.ok()) continue;
        const double rho = scales_for(*r.result).rho();
        const auto pr = pde_residual(r.result->profile, 10 * rho, 0.9);
        const double rel = pr.relative();
        worst = std::max(worst, rel);
        ++n;
        c.check(rel <= 1e-5, std::string(to_string(r.result->problem)) + " gamma=" + fmt("%g", r.gamma) + " relative residual " +
                                 fmt("%.3g", rel));
      }
    }
    c.check(n > 0, "no accepted profiles");
    return std::to_string(n) + " profiles, worst relative residual " + fmt("%.2g", worst);
  }));

  results.push_back(run(8, "determinism", 0.0, [&](Checker& c) {
    const std::string a[] = {csv_of(t1_rows), csv_of(nodal_rows), csv_of(g_rows)};
    const std::string b[] = {csv_of(run_sweep(AcceptanceSweeps::t1(), AcceptanceSweeps::kT1)),
                             csv_of(run_sweep(AcceptanceSweeps::nodal(), AcceptanceSweeps::kNodal)),
                             csv_of(run_sweep(AcceptanceSweeps::gtype(), AcceptanceSweeps::kGType))};
    const char* names[] = {"t1.csv", "nodal.csv", "gtype.csv"};
    for (int i = 0; i < 3; ++i) c.check(a[i] == b[i], std::string(names[i]) + " differs between runs");
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      for (int i = 0; i < 3; ++i) std::ofstream(std::filesystem::path(out_dir) / names[i], std::ios::binary) << a[i];
    }
    return "three sweep tables byte-identical across runs";
  }));

  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << ", "
        << fmt("%.2f", r.seconds) << " s): " << r.detail << "\n";
    for (const auto& f : r.failures) out << "    - " << f << "\n";
  }
  return results;
}

}  // namespace bubbleshoot
