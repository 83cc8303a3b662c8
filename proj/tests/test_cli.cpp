#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ncwigner/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ncwigner::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(std::stod(f));
  return v;
}

}  // namespace

TEST(Cli, ThermoRowHasPartitionValue) {
  const auto r = run({"thermo", "--epsilon", "0", "--sigma", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "sigma,Z,U,Sk,Cv,dS12,dI12");
  const auto f = fields(ls[1]);
  EXPECT_NEAR(f[1], 0.9206735, 1e-6);
  EXPECT_NE(r.err.find("ncwigner thermo inputs="), std::string::npos);
}

TEST(Cli, TrajectoryAutoClosesOrbit) {
  const auto r = run({"trajectory", "--epsilon", "0.25", "--tmax", "auto", "--samples", "9", "--x", "0.5",
                      "--pi-y", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 10u);
  EXPECT_EQ(ls[0], "t,Q1,Pi1,Q2,Pi2,xi2,L");
  const auto first = fields(ls[1]), last = fields(ls[9]);
  EXPECT_NEAR(last[0], 8 * std::numbers::pi, 1e-12);
  for (int k = 1; k <= 4; ++k) EXPECT_NEAR(last[k], first[k], 1e-12);
}

TEST(Cli, EntropyVanishesWithoutNoncommutativity) {
  const auto r = run({"entropy", "--nx", "1", "--ny", "2", "--epsilon", "0", "--samples", "4", "--quad-order", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls[0], "t,S1,S2,S12,I12");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    for (int k = 1; k <= 4; ++k) EXPECT_LT(std::abs(f[k]), 1e-6);
  }
}

TEST(Cli, WignerGridFormats) {
  const auto csv = run({"wigner-grid", "--epsilon", "0.25", "--grid-n", "61", "--quad-order", "10", "--verify"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  auto ls = lines(csv.out);
  EXPECT_EQ(ls[0], "r,k,value");
  EXPECT_EQ(ls.size(), 1u + 61u * 61u + 1u);
  EXPECT_EQ(ls.back().rfind("# normalization=", 0), 0u);

  const auto mat = run({"wigner-grid", "--epsilon", "0.25", "--grid-n", "61", "--quad-order", "10", "--format",
                        "matrix", "--t", "2", "--plane", "2"});
  ASSERT_EQ(mat.code, 0) << mat.err;
  ls = lines(mat.out);
  EXPECT_EQ(ls[0], "61 6 2 1 2 2");
  EXPECT_EQ(ls.size(), 62u);
}

TEST(Cli, BeatFramesAndGammaRequirement) {
  const auto r = run({"beat", "--epsilon", "0.25", "--grid-n", "61", "--quad-order", "8", "--frames", "3",
                      "--format", "matrix"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 3u * 62u);
  const auto flat = run({"beat", "--epsilon", "0", "--grid-n", "9"});
  EXPECT_EQ(flat.code, 3);
}

TEST(Cli, OrbitalDistortionAndSigmaMax) {
  const auto d = run({"orbital-distortion", "--epsilon", "0.5", "--sigma", "1", "--grid-n", "5", "--quad-order", "6"});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto ls = lines(d.out);
  std::istringstream head(ls[0]);
  int n = 0;
  double x = 0, sigma = 0, eps = 0;
  head >> n >> x >> sigma >> eps;
  EXPECT_EQ(n, 5);
  EXPECT_EQ(x, 6.0);
  EXPECT_EQ(sigma, 1.0);
  EXPECT_NEAR(eps, 0.5, 1e-15);
  EXPECT_EQ(ls.size(), 6u);

  const auto s = run({"sigma-max", "--epsilon", "0.2", "--quad-order", "4"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto sl = lines(s.out);
  ASSERT_EQ(sl.size(), 2u);
  EXPECT_EQ(sl[0], "epsilon,sigma_max_dS,sigma_max_dI");
  const auto f = fields(sl[1]);
  EXPECT_GE(f[1], 1.0);
  EXPECT_LE(f[1], 4.0);
  EXPECT_GE(f[2], 1.0);
  EXPECT_LE(f[2], 4.0);
  EXPECT_EQ(run({"sigma-max", "--epsilon", "0"}).code, 5);
}

TEST(Cli, ZeemanTable) {
  const auto r = run({"zeeman", "--theta", "0.2", "--eta", "0.3", "--levels", "3", "--verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "kappa,ell,E_zeeman,n1,n2,E_cartesian,diff");
  // 1 + 2 + 3 + 4 levels plus header and trailer
  EXPECT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls.back(), "# max_abs_diff=0");
}

TEST(Cli, ErrorCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"thermo", "--bogus"}).code, 2);
  EXPECT_EQ(run({"thermo", "--epsilon", "0.1", "--theta", "0.1"}).code, 2);
  EXPECT_EQ(run({"thermo", "--epsilon", "1.0", "--sigma", "1"}).code, 3);
  EXPECT_EQ(run({"thermo", "--theta", "1", "--eta", "1", "--sigma", "1"}).code, 3);
  EXPECT_EQ(run({"wigner-grid", "--epsilon", "0.2", "--grid-x", "1", "--grid-n", "11"}).code, 4);
  EXPECT_EQ(run({"trajectory", "--tmax", "soon"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto msg = run({"thermo", "--theta", "1", "--eta", "1", "--sigma", "1"});
  EXPECT_NE(msg.err.find("theta*eta"), std::string::npos);
}

TEST(Cli, ConfigFileAndOutputFile) {
  const std::string cfg = ::testing::TempDir() + "ncwigner_cli.cfg";
  const std::string out = ::testing::TempDir() + "ncwigner_cli.csv";
  {
    std::ofstream f(cfg);
    f << "m=1\nomega=1\nhbar=1\ntheta=0.1\neta=0.1\n";
  }
  const auto r = run({"zeeman", "--config", cfg, "--levels", "1", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str().rfind("kappa,ell,E_zeeman", 0), 0u);
  EXPECT_EQ(ss.str().find('\r'), std::string::npos);
  EXPECT_NE(r.err.find("out=" + out), std::string::npos);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST(Cli, RepeatedRunsAreIdentical) {
  const std::vector<std::string> args{"entropy", "--epsilon", "0.3", "--samples", "3", "--quad-order", "10"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}
