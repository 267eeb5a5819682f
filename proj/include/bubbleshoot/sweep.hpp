#pragma once

// gamma sweeps: one solve per gamma dispatched concurrently, rows collected
// and emitted in gamma order.

#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bubbleshoot/diagnostics.hpp"
#include "bubbleshoot/shooting.hpp"

namespace bubbleshoot {

struct SweepParams {
  Problem problem = Problem::Positive;
  double l = 1.0;
  int k = 2;
  double a = 2.0;
  GFloor floor = GFloor::Constant;
  double c0 = std::numeric_limits<double>::quiet_NaN();
  SolverTolerances tol{};
};

struct SweepRow {
  double gamma = 0.0;
  std::optional<ShootingResult> result;
  std::optional<DiagnosticsReport> report;
  std::string error;  // empty on success

  bool ok() const { return result.has_value(); }
};

inline constexpr const char* kSweepHeader =
    "gamma,lambda_bar,log_beta,beta,R_residual,energy,energy_residual,l2_norm,"
    "beta_law_ratio,weak_dev,gap_law_ratio,inner_res,mid_res";

inline ShootingResult solve(const SweepParams& p, double gamma) {
  switch (p.problem) {
    case Problem::Positive:
      return solve_theorem1({p.l, gamma}, p.tol);
    case Problem::Nodal:
      return solve_nodal(p.l, p.k, gamma, p.tol);
    case Problem::GType:
      return solve_gtype(p.a, gamma, p.floor, p.c0, p.tol);
  }
  throw ConfigError("unknown problem");
}

inline SweepRow sweep_one(const SweepParams& p, double gamma) {
  SweepRow row;
  row.gamma = gamma;
  try {
    auto res = solve(p, gamma);
    row.report = report(res, p.tol.quad_tol);
    row.result = std::move(res);
  } catch (const std::exception& e) {
    row.result.reset();
    row.report.reset();
    row.error = e.what();
  }
  return row;
}

/// Solves every gamma concurrently. gammas must be ascending.
inline std::vector<SweepRow> run_sweep(const SweepParams& p, std::span<const double> gammas) {
  for (std::size_t i = 1; i < gammas.size(); ++i) {
    if (!(gammas[i] > gammas[i - 1])) throw ConfigError("gamma list must be strictly ascending");
  }
  std::vector<std::future<SweepRow>> jobs;
  jobs.reserve(gammas.size());
  for (double g : gammas) jobs.push_back(std::async(std::launch::async, sweep_one, p, g));
  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

namespace sweep_detail {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace sweep_detail

/// Header plus one line per row. A failed solve leaves every column but
/// gamma empty.
inline void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  using sweep_detail::num;
  os << kSweepHeader << '\n';
  for (const auto& row : rows) {
    os << num(row.gamma);
    if (!row.report) {
      os << std::string(12, ',') << '\n';
      continue;
    }
    const auto& d = *row.report;
    std::optional<double> inner, mid;
    if (d.inner) inner = d.inner->max_residual;
    if (d.mid) mid = d.mid->max_residual;
    os << ',' << num(d.lambda_bar) << ',' << num(d.log_beta) << ',' << num(d.beta) << ',' << num(d.R_residual)
       << ',' << num(d.dirichlet_energy) << ',' << num(d.energy_residual) << ',' << num(d.l2_norm) << ','
       << num(d.beta_law_ratio) << ',' << num(d.weak_limit_dev) << ',' << num(d.gap_law_ratio) << ','
       << num(inner) << ',' << num(mid) << '\n';
  }
}

}  // namespace bubbleshoot
