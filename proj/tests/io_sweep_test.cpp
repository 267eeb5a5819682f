#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "bubbleshoot/io.hpp"
#include "bubbleshoot/sweep.hpp"

using namespace bubbleshoot;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv(const SweepParams& p, std::vector<double> gammas) {
  std::ostringstream os;
  const auto rows = run_sweep(p, gammas);
  write_sweep_csv(os, rows);
  return os.str();
}

}  // namespace

TEST(Sweep, EmptyListGivesHeaderOnly) {
  EXPECT_EQ(csv({}, {}),
            "gamma,lambda_bar,log_beta,beta,R_residual,energy,energy_residual,l2_norm,beta_law_ratio,weak_dev,"
            "gap_law_ratio,inner_res,mid_res\n");
}

TEST(Sweep, TheoremOneRows) {
  const auto out = lines_of(csv({.problem = Problem::Positive, .l = 1.0}, {6, 8, 10, 12}));
  ASSERT_EQ(out.size(), 5u);
  double prev = INFINITY;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto f = fields_of(out[i]);
    ASSERT_EQ(f.size(), 13u) << out[i];
    EXPECT_FALSE(f[8].empty());   // beta_law_ratio
    EXPECT_TRUE(f[10].empty());   // gap_law_ratio
    EXPECT_FALSE(f[11].empty());  // inner_res
    EXPECT_TRUE(f[12].empty());   // mid_res
    const double eres = std::stod(f[6]);
    EXPECT_LT(eres, prev);
    prev = eres;
  }
}

TEST(Sweep, NodalFailureRowThenSuccess) {
  const auto rows = run_sweep({.problem = Problem::Nodal, .l = 1.0, .k = 2}, std::vector<double>{8, 10});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ok());
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].ok());
  std::ostringstream os;
  write_sweep_csv(os, rows);
  const auto out = lines_of(os.str());
  EXPECT_EQ(out[1], "8,,,,,,,,,,,,");
  const auto f = fields_of(out[2]);
  ASSERT_EQ(f.size(), 13u);
  EXPECT_FALSE(f[4].empty());
  EXPECT_FALSE(f[10].empty());
}

TEST(Sweep, GTypeColumns) {
  const auto out = lines_of(csv({.problem = Problem::GType, .a = 2.0}, {9}));
  const auto f = fields_of(out[1]);
  EXPECT_TRUE(f[1] == "0");  // no linear term
  EXPECT_FALSE(f[12].empty());
}

TEST(Sweep, RowsRoundTripAtFullPrecision) {
  const auto rows = run_sweep({.problem = Problem::Positive}, std::vector<double>{7});
  std::ostringstream os;
  write_sweep_csv(os, rows);
  const auto f = fields_of(lines_of(os.str())[1]);
  EXPECT_EQ(std::stod(f[2]), rows[0].report->log_beta);
  EXPECT_EQ(std::stod(f[5]), rows[0].report->dirichlet_energy);
}

TEST(Sweep, Deterministic) {
  const SweepParams p{.problem = Problem::GType, .a = 2.0};
  EXPECT_EQ(csv(p, {6, 9, 12}), csv(p, {6, 9, 12}));
}

TEST(Sweep, RejectsUnsortedGammas) {
  EXPECT_THROW(run_sweep({}, std::vector<double>{8, 6}), ConfigError);
}

TEST(Config, ParsesTolerances) {
  const auto t = parse_config("# tolerances\node_tol = 1e-11\n  shoot_tol_R=2e-10  # inline\n\nquad_tol=1e-9\n");
  EXPECT_EQ(t.ode_tol, 1e-11);
  EXPECT_EQ(t.shoot_tol_R, 2e-10);
  EXPECT_EQ(t.quad_tol, 1e-9);
  const auto d = parse_config("");
  EXPECT_EQ(d.ode_tol, 1e-12);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("ode_tol 1e-9"), ConfigError);
  EXPECT_THROW(parse_config("odetol=1e-9"), ConfigError);
  EXPECT_THROW(parse_config("ode_tol=abc"), ConfigError);
  EXPECT_THROW(parse_config("ode_tol=1e-9x"), ConfigError);
  EXPECT_THROW(parse_config("quad_tol=-1"), ConfigError);
}

TEST(Json, Spec) {
  const auto j = to_json(NonlinearitySpec::adimurthi_druet(3.0, -2.0));
  EXPECT_EQ(j["variant"], "AdimurthiDruet");
  EXPECT_EQ(j["lambda_bar"], 3.0);
  EXPECT_EQ(j["log_beta"], -2.0);
  EXPECT_TRUE(j["a"].is_null());
  const auto g = to_json(NonlinearitySpec::g_type(2.0, 0.5));
  EXPECT_EQ(g["a"], 2.0);
  EXPECT_EQ(g["c0"], 2.0);
  EXPECT_TRUE(g["lambda_bar"].is_null());
}

TEST(Json, Result) {
  const auto res = solve_nodal(1.0, 2, 10.0);
  const auto j = to_json(res);
  for (const char* key : {"gamma", "lambda_bar", "log_beta", "beta", "R_first", "boundary_residual", "zeros"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["zeros"].size(), res.k_zeros.size());
  EXPECT_EQ(j["log_beta"], res.spec.log_beta);
  EXPECT_EQ(j["r_k_gamma"], res.r_k_gamma);
}

TEST(Json, ResidualAndEigen) {
  const auto j = to_json(ResidualReport{0.0, 0.5, 1.25, 0.1, 8.0});
  EXPECT_EQ(j["window"], (json{0.0, 0.5}));
  EXPECT_EQ(j["max_residual"], 1.25);
  const auto e = to_json(eigen_data(2));
  EXPECT_EQ(e["k"], 2);
  EXPECT_EQ(e["r_k"], eigen_data(2).r_k);
  EXPECT_TRUE(e.contains("v_k0"));
  EXPECT_TRUE(e.contains("alpha_k"));
}
