// Command-line front end: eigen data, single solves, gamma sweeps and the
// acceptance run.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bubbleshoot/acceptance.hpp"
#include "bubbleshoot/io.hpp"
#include "bubbleshoot/sweep.hpp"

using namespace bubbleshoot;
namespace fs = std::filesystem;

namespace {

std::vector<double> parse_gammas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("bad gamma '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void write_profile(const std::string& path, const RadialProfile& p) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  write_profile_csv(os, p);
}

void print_result(const ShootingResult& res, double quad_tol) {
  json j = to_json(res);
  j["diagnostics"] = to_json(report(res, quad_tol));
  std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial shooting for critical exponential-growth Dirichlet problems on the unit disk"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key=value file with ode_tol, shoot_tol_R, quad_tol")
      ->check(CLI::ExistingFile);

  int eigen_k = 1;
  auto* eigen = app.add_subcommand("eigen", "Radial Dirichlet eigen-data of the disk");
  eigen->add_option("--k", eigen_k, "index")->check(CLI::Range(1, 20));

  double l = 1.0, gamma = 0.0, a = 2.0, c0 = std::numeric_limits<double>::quiet_NaN();
  int k = 2;
  std::string variant = "default", profile_path;

  auto* t1 = app.add_subcommand("solve-t1", "Positive solution with lambda_bar = lambda_1 - eps");
  t1->add_option("--l", l, "limiting energy excess")->required();
  t1->add_option("--gamma", gamma, "u(0)")->required();
  t1->add_option("--profile", profile_path, "write the profile as CSV");

  auto* nodal = app.add_subcommand("solve-nodal", "Sign-changing solution with k nodal regions");
  nodal->add_option("--l", l)->required();
  nodal->add_option("--k", k)->required();
  nodal->add_option("--gamma", gamma)->required();
  nodal->add_option("--profile", profile_path, "write the profile as CSV");

  auto* gt = app.add_subcommand("solve-g", "Positive solution for f = beta u g(u) e^{u^2}");
  gt->add_option("--a", a)->required();
  gt->add_option("--gamma", gamma)->required();
  gt->add_option("--g-variant", variant, "floor of g")->check(CLI::IsMember({"default", "ramp"}));
  gt->add_option("--c0", c0, "switch point (default a)");
  gt->add_option("--profile", profile_path, "write the profile as CSV");

  std::string problem = "t1", gammas_text, out_path, profiles_dir;
  auto* sweep = app.add_subcommand("sweep", "Solve over a gamma list and write a CSV table");
  sweep->add_option("--problem", problem)->check(CLI::IsMember({"t1", "nodal", "gtype"}));
  sweep->add_option("--l", l);
  sweep->add_option("--k", k);
  sweep->add_option("--a", a);
  sweep->add_option("--g-variant", variant)->check(CLI::IsMember({"default", "ramp"}));
  sweep->add_option("--c0", c0);
  sweep->add_option("--gammas", gammas_text, "comma-separated ascending list")->required();
  sweep->add_option("--out", out_path, "CSV path")->required();
  sweep->add_option("--profiles", profiles_dir, "directory for per-gamma profile CSVs");

  std::string verify_dir;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--out-dir", verify_dir, "write the sweep tables here");

  CLI11_PARSE(app, argc, argv);

  try {
    SolverTolerances tol;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      tol = parse_config(in);
    }
    const GFloor floor = variant == "ramp" ? GFloor::LinearRamp : GFloor::Constant;

    if (*eigen) {
      std::cout << to_json(eigen_data(eigen_k)).dump(2) << "\n";
    } else if (*t1) {
      const auto res = solve_theorem1({l, gamma}, tol);
      write_profile(profile_path, res.profile);
      print_result(res, tol.quad_tol);
    } else if (*nodal) {
      const auto res = solve_nodal(l, k, gamma, tol);
      write_profile(profile_path, res.profile);
      print_result(res, tol.quad_tol);
    } else if (*gt) {
      const auto res = solve_gtype(a, gamma, floor, c0, tol);
      write_profile(profile_path, res.profile);
      print_result(res, tol.quad_tol);
    } else if (*sweep) {
      SweepParams p{.l = l, .k = k, .a = a, .floor = floor, .c0 = c0, .tol = tol};
      p.problem = problem == "t1" ? Problem::Positive : problem == "nodal" ? Problem::Nodal : Problem::GType;
      const auto gammas = parse_gammas(gammas_text);
      const auto rows = run_sweep(p, gammas);
      std::ofstream os(out_path, std::ios::binary);
      if (!os) throw ConfigError("cannot write " + out_path);
      write_sweep_csv(os, rows);
      if (!profiles_dir.empty()) fs::create_directories(profiles_dir);
      for (const auto& r : rows) {
        if (!r.ok()) {
          std::cerr << "gamma=" << r.gamma << ": " << r.error << "\n";
          continue;
        }
        if (!profiles_dir.empty()) {
          char name[64];
          std::snprintf(name, sizeof name, "profile_%s_gamma_%g.csv", problem.c_str(), r.gamma);
          write_profile((fs::path(profiles_dir) / name).string(), r.result->profile);
        }
      }
    } else if (*verify) {
      const auto results = run_acceptance(std::cout, verify_dir);
      for (const auto& r : results) {
        if (!r.pass) return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
