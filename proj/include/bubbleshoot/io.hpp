#pragma once

// JSON views of specs, results and reports, and the key=value tolerance
// config.

#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bubbleshoot/bubble.hpp"
#include "bubbleshoot/diagnostics.hpp"
#include "bubbleshoot/error.hpp"
#include "bubbleshoot/nonlinearity.hpp"
#include "bubbleshoot/shooting.hpp"
#include "bubbleshoot/special_functions.hpp"

namespace bubbleshoot {

using json = nlohmann::ordered_json;

namespace io_detail {

// NaN has no JSON spelling; inapplicable values become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace io_detail

inline json to_json(const NonlinearitySpec& s) {
  using io_detail::number;
  json j;
  j["variant"] = to_string(s.variant);
  if (s.variant == Variant::AdimurthiDruet) {
    j["lambda_bar"] = number(s.lambda_bar);
    j["log_beta"] = number(s.log_beta);
    j["a"] = nullptr;
    j["c0"] = nullptr;
  } else {
    j["lambda_bar"] = nullptr;
    j["log_beta"] = number(s.log_beta);
    j["a"] = number(s.a);
    j["c0"] = number(s.c0);
    j["g_floor"] = to_string(s.floor);
  }
  return j;
}

inline json to_json(const EigenData& e) {
  json j;
  j["k"] = e.k;
  j["j0k"] = e.j0k;
  j["lambda_k"] = e.lambda_k;
  j["v_k0"] = e.norm_c;
  j["r_k"] = e.r_k;
  j["alpha_k"] = e.alpha_k;
  return j;
}

inline json to_json(const ResidualReport& r) {
  json j;
  j["window"] = {r.r_lo, r.r_hi};
  j["max_residual"] = r.max_residual;
  j["argmax_r"] = r.argmax_r;
  j["gamma"] = r.gamma;
  return j;
}

inline json to_json(const ShootingResult& r) {
  using io_detail::number;
  json j;
  j["problem"] = to_string(r.problem);
  j["gamma"] = r.gamma;
  j["lambda_bar"] = r.spec.variant == Variant::AdimurthiDruet ? number(r.spec.lambda_bar) : json(nullptr);
  j["log_beta"] = r.spec.log_beta;
  j["beta"] = r.beta();
  j["R_first"] = r.R_first;
  j["boundary_residual"] = r.boundary_residual;
  json zeros = json::array();
  for (const auto& z : r.k_zeros) zeros.push_back(z.r);
  j["zeros"] = zeros;
  j["spec"] = to_json(r.spec);
  if (r.problem == Problem::Nodal) {
    j["k"] = r.k;
    j["r_k_gamma"] = r.r_k_gamma;
    j["r_k_gamma_in_window"] = r.in_window;
    j["lambda_tilde"] = r.lambda_tilde;
    j["log_beta_tilde"] = r.log_beta_tilde;
  }
  json trace = json::array();
  for (const auto& b : r.bracket_trace) trace.push_back({b.log_beta, b.R});
  j["bracket_trace"] = trace;
  return j;
}

inline json to_json(const DiagnosticsReport& d) {
  using io_detail::number;
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : json(nullptr); };
  json j;
  j["gamma"] = d.gamma;
  j["energy"] = d.dirichlet_energy;
  j["energy_target"] = d.energy_target;
  j["energy_residual"] = d.energy_residual;
  j["l2_norm"] = d.l2_norm;
  j["l2_target"] = d.l2_target;
  j["weak_dev"] = d.weak_limit_dev;
  j["tau_dev"] = d.tau_dev;
  j["identity_rel_error"] = opt(d.identity_rel_error);
  j["beta_law_ratio"] = opt(d.beta_law_ratio);
  j["gap_law_ratio"] = opt(d.gap_law_ratio);
  j["second_order_dev"] = opt(d.second_order_dev);
  j["mass_law"] = opt(d.mass_law);
  j["centered_mass"] = d.centered_mass;
  j["inner"] = d.inner ? to_json(*d.inner) : json(nullptr);
  j["mid"] = d.mid ? to_json(*d.mid) : json(nullptr);
  return j;
}

/// Reads `key = value` lines (ode_tol, shoot_tol_R, quad_tol); '#' starts a
/// comment. Unknown keys and malformed lines are errors.
inline SolverTolerances parse_config(std::istream& in, SolverTolerances tol = {}) {
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::logic_error&) {
      throw ConfigError("config line " + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (!(v > 0.0)) throw ConfigError("config line " + std::to_string(lineno) + ": " + key + " must be positive");
    if (key == "ode_tol") {
      tol.ode_tol = v;
    } else if (key == "shoot_tol_R") {
      tol.shoot_tol_R = v;
    } else if (key == "quad_tol") {
      tol.quad_tol = v;
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return tol;
}

inline SolverTolerances parse_config(const std::string& text, SolverTolerances tol = {}) {
  std::istringstream in(text);
  return parse_config(in, tol);
}

}  // namespace bubbleshoot
