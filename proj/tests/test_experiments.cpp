// Copyright 2026 The maxent-sb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace maxent_sb {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("maxent_sb_test_" + name);
  fs::remove_all(dir);
  return dir;
}

RunContext context(json cfg, const fs::path& out, int workers = 1) {
  RunContext ctx;
  ctx.config = std::move(cfg);
  ctx.seed = 12345;
  ctx.out_dir = out.string();
  ctx.workers = workers;
  ctx.quick = true;
  return ctx;
}

TEST(Csv, HeaderCarriesHashAndSeed) {
  CsvTable t({"a", "b"});
  t.add_row({1.5, static_cast<long long>(2)});
  std::ostringstream os;
  t.write(os, "abc", 7);
  EXPECT_EQ(os.str(), "# config_hash=abc seed=7\na,b\n1.5,2\n");
}

TEST(Experiments, FigureCsvIsByteIdenticalAcrossWorkerCounts) {
  const fs::path a = fresh_dir("w1"), b = fresh_dir("w3");
  for (const auto& [dir, workers] : {std::pair{a, 1}, std::pair{b, 3}}) {
    const RunContext ctx = context(json::object(), dir, workers);
    run_fig1(ctx);
    run_fig2(ctx);
    run_fig3(ctx);
  }
  for (const char* f : {"fig1.csv", "fig2.csv", "fig3_instances.csv", "fig3_trace.csv"}) {
    const std::string x = slurp(a / f);
    ASSERT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, slurp(b / f)) << f;
    EXPECT_EQ(x.rfind("# config_hash=", 0), 0u) << f;
  }
}

TEST(Experiments, ConfigHashIgnoresSeedAndOutput) {
  RunContext x = context({{"beta", 2.0}}, "/tmp/a"), y = context({{"beta", 2.0}}, "/tmp/b");
  y.seed = 99;
  y.workers = 4;
  EXPECT_EQ(x.config_hash(), y.config_hash());
  EXPECT_NE(x.config_hash(), context({{"beta", 3.0}}, "/tmp/a").config_hash());
}

TEST(Experiments, Fig1WithoutCouplingIsTrivial) {
  const auto r = run_fig1(context({{"g", 0.0}}, ""));
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.report.rhs, 0.0);
    EXPECT_NEAR(row.report.lhs, 0.0, 1e-12);
    EXPECT_TRUE(row.report.satisfied);
  }
}

TEST(Experiments, Fig2SlopeIsLinear) {
  const auto r = run_fig2(context(json::object(), ""));
  std::vector<double> g, lhs, rhs;
  for (const auto& row : r.rows) {
    g.push_back(row.key);
    lhs.push_back(row.report.lhs);
    rhs.push_back(row.report.rhs);
    EXPECT_TRUE(row.report.satisfied);
  }
  EXPECT_NEAR(testing::slope_of(g, lhs), 1.0, 0.1);
  EXPECT_NEAR(testing::slope_of(g, rhs), 1.0, 1e-12);
}

TEST(Experiments, SolveIsDeterministicAndWritesArtifacts) {
  const fs::path a = fresh_dir("solve_a"), b = fresh_dir("solve_b");
  const json cfg = {{"model", "jc"}, {"beta", 1.0}, {"j", 1e-3}};
  const auto r = run_solve(context(cfg, a));
  run_solve(context(cfg, b));
  for (const char* f : {"solution.json", "lambda.txt", "lambda0.txt", "delta_lambda.txt", "rho_me.txt", "rho_s.txt"}) {
    EXPECT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_EQ(r.summary.at("delta_lambda_first_order_trace_norm").get<double>(), 0.0);
  EXPECT_LE(r.solution.residual, 1e-10);
  const Operator rho = load_operator((a / "rho_me.txt").string());
  EXPECT_EQ(rho.matrix(), r.solution.joint_state.matrix());
}

TEST(Experiments, SolveDecoupledCentralSpin) {
  const auto r = run_solve(context({{"model", "central-spin"}, {"n", 1}, {"g", 0.0}}, ""));
  EXPECT_LE(r.solution.iterations, 2);
  EXPECT_LE(r.solution.residual, 1e-10);
  EXPECT_NEAR(r.correlation_norm, 0.0, 1e-12);
}

TEST(Experiments, FileModelMatchesBuiltIn) {
  const fs::path dir = fresh_dir("file_model");
  fs::create_directories(dir);
  const auto m = build_central_spin({2, 0.01});
  save_operator((dir / "hs.txt").string(), m.h_s());
  save_operator((dir / "hb.txt").string(), m.h_b());
  save_operator((dir / "hsb.txt").string(), m.h_sb());
  RunContext ctx = context({{"model", "file"}, {"h_s", "hs.txt"}, {"h_b", "hb.txt"}, {"h_sb", "hsb.txt"}}, "");
  ctx.base_dir = dir.string();
  const auto from_file = run_solve(ctx);
  const auto built_in = run_solve(context({{"model", "central-spin"}, {"n", 2}, {"g", 0.01}}, ""));
  EXPECT_EQ(from_file.solution.joint_state.matrix(), built_in.solution.joint_state.matrix());
}

TEST(Experiments, ConfigErrors) {
  EXPECT_THROW(run_solve(context({{"model", "ising"}}, "")), ConfigError);
  EXPECT_THROW(run_solve(context({{"model", "jc"}, {"beta", "hot"}}, "")), ConfigError);
  EXPECT_THROW(run_solve(context({{"model", "jc"}, {"tol", -1.0}}, "")), ConfigError);
  EXPECT_THROW(run_solve(context({{"model", "jc"}, {"rho_s", {{"bloch", {0.1, 0.2}}}}}, "")), ConfigError);
}

TEST(Validation, QuickSuitePasses) {
  ValidationConfig cfg;
  cfg.quick = true;
  const auto results = run_validation(cfg);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(Validation, SignMutationIsCaughtByScalingCheck) {
  ValidationConfig cfg;
  cfg.quick = true;
  cfg.delta_lambda_sign = -1.0;
  const auto results = run_validation(cfg);
  EXPECT_FALSE(all_passed(results));
  for (const auto& r : results) {
    const bool is_scaling = r.name.find("quadratic") != std::string::npos;
    EXPECT_EQ(r.passed, !is_scaling) << r.name << ": " << r.detail;
  }
}

}  // namespace
}  // namespace maxent_sb
