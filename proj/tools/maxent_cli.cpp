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


// maxent-sb: command-line driver for the maximum-entropy system-bath tools.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "maxent_sb/maxent_sb.hpp"

namespace {

using maxent_sb::json;

// Flags that land in the effective config. Only flags actually given on the
// command line override (or extend) the --config file.
struct Overrides {
  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> entries;

  template <class T>
  void add(CLI::App& app, const std::string& flag, const char* key, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app.add_option(flag, *value, help);
    entries.emplace_back(opt, [value, key](json& cfg) { cfg[key] = *value; });
  }

  void apply(json& cfg) const {
    for (const auto& [opt, set] : entries)
      if (opt->count() > 0) set(cfg);
  }
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw maxent_sb::ConfigError("cannot open config file '" + path + "'");
  json cfg;
  try {
    is >> cfg;
  } catch (const json::exception& e) {
    throw maxent_sb::ConfigError("config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw maxent_sb::ConfigError("config file must hold a JSON object");
  return cfg;
}

void print_report_rows(const std::vector<maxent_sb::SweepRow>& rows, const char* key) {
  std::printf("%-10s %-14s %-14s %s\n", key, "lhs", "rhs", "ok");
  for (const auto& r : rows)
    std::printf("%-10g %-14.6e %-14.6e %s\n", r.key, r.report.lhs, r.report.rhs, r.report.satisfied ? "yes" : "NO");
}

bool all_satisfied(const std::vector<maxent_sb::SweepRow>& rows) {
  for (const auto& r : rows)
    if (!r.report.satisfied) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy system-bath initial states: solver, bound checks and figure data"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir;
  int workers = maxent_sb::default_workers();
  bool quick = false;
  Overrides ov;

  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory for CSV/JSON/matrix files");
  app.add_option("--workers", workers, "Worker threads for batch commands")->check(CLI::PositiveNumber);
  app.add_flag("--quick", quick, "Reduced instance counts");
  ov.add<double>(app, "--tol", "tol", "Solver tolerance on ||tr_B rho - rho_S||_1");
  ov.add<int>(app, "--max-iter", "max_iter", "Solver iteration cap");
  ov.add<double>(app, "--damping", "damping", "Initial fixed-point damping");
  ov.add<double>(app, "--eigen-floor", "eigen_floor", "Eigenvalue floor applied to rho_S before the logarithm");

  // Model and experiment parameters, shared across subcommands.
  ov.add<std::string>(app, "--model", "model", "jc | central-spin | random | file");
  ov.add<double>(app, "--beta", "beta", "Inverse temperature");
  ov.add<double>(app, "--j", "j", "Jaynes-Cummings coupling J");
  ov.add<double>(app, "--omega", "omega", "Mode frequency");
  ov.add<double>(app, "--omega-a", "omega_a", "Atomic frequency");
  ov.add<int>(app, "--n-max", "n_max", "Fock cutoff (default from the thermal tail)");
  ov.add<int>(app, "--n", "n", "Number of bath spins");
  ov.add<double>(app, "--g", "g", "Central-spin coupling");
  ov.add<long long>(app, "--d-s", "d_s", "System dimension (random models)");
  ov.add<long long>(app, "--d-b", "d_b", "Bath dimension (random models)");
  ov.add<double>(app, "--sb-fraction", "sb_fraction", "||H_SB||_1 relative to the free parts (random models)");
  ov.add<std::uint64_t>(app, "--model-seed", "model_seed", "Seed for a random model");
  ov.add<std::string>(app, "--h-s", "h_s", "H_S matrix file (file model)");
  ov.add<std::string>(app, "--h-b", "h_b", "H_B matrix file (file model)");
  ov.add<std::string>(app, "--h-sb", "h_sb", "H_SB matrix file (file model)");
  ov.add<std::string>(app, "--rho-s", "rho_s", "System state matrix file");
  ov.add<std::string>(app, "--rho-s-prime", "rho_s_prime", "Second system state matrix file (witness)");
  ov.add<std::string>(app, "--method", "method", "exact | perturbative | factorized-thermal | factorized-uniform");
  ov.add<std::string>(app, "--assignment", "assignment", "Assignment used by fig3/witness");
  ov.add<std::vector<int>>(app, "--n-values", "n_values", "fig1: bath sizes");
  ov.add<std::vector<double>>(app, "--g-values", "g_values", "fig2: couplings");
  ov.add<int>(app, "--hamiltonians", "n_hamiltonians", "fig3: number of random Hamiltonians");
  ov.add<int>(app, "--pairs", "n_pairs", "fig3: state pairs per Hamiltonian");
  ov.add<int>(app, "--times", "n_times", "fig3/witness: time points");
  ov.add<double>(app, "--t-max", "t_max", "fig3/witness: final time in units of 1/E_max");

  app.fallthrough();  // global flags may follow the subcommand
  CLI::App* solve = app.add_subcommand("solve", "Solve for the maximum-entropy joint state");
  CLI::App* fig1 = app.add_subcommand("fig1", "Deviation bound versus the number of bath spins");
  CLI::App* fig2 = app.add_subcommand("fig2", "Deviation bound versus the coupling g");
  CLI::App* fig3 = app.add_subcommand("fig3", "Distinguishability bound on random Hamiltonians");
  CLI::App* witness = app.add_subcommand("witness", "Trace-distance series for one model and two states");
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite");
  CLI11_PARSE(app, argc, argv);

  try {
    maxent_sb::RunContext ctx;
    ctx.config = load_config(config_path);
    ov.apply(ctx.config);
    ctx.seed = seed;
    ctx.out_dir = out_dir;
    ctx.workers = workers;
    ctx.quick = quick;
    if (!config_path.empty()) ctx.base_dir = std::filesystem::path(config_path).parent_path().string();

    if (*solve) {
      const auto r = maxent_sb::run_solve(ctx);
      std::printf("method             %s\n", std::string(maxent_sb::to_string(r.solution.method)).c_str());
      std::printf("residual           %.3e\n", r.solution.residual);
      std::printf("iterations         %d\n", r.solution.iterations);
      std::printf("||dLambda||_1      %.3e  (first order)\n",
                  r.summary.at("delta_lambda_first_order_trace_norm").get<double>());
      std::printf("||L - L0||_1       %.3e\n", maxent_sb::trace_norm(r.solution.delta_lambda));
      std::printf("S(rho_ME)          %.10f\n", r.entropy);
      std::printf("S(B|S)             %.10f\n", r.conditional_entropy);
      std::printf("correlation_norm   %.3e\n", r.correlation_norm);
      for (const auto& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      return 0;
    }
    if (*fig1 || *fig2) {
      const auto r = *fig1 ? maxent_sb::run_fig1(ctx) : maxent_sb::run_fig2(ctx);
      print_report_rows(r.rows, *fig1 ? "N" : "g");
      return all_satisfied(r.rows) ? 0 : 1;
    }
    if (*fig3) {
      const auto r = maxent_sb::run_fig3(ctx);
      std::vector<double> ratios;
      for (const auto& i : r.instances) ratios.push_back(i.report.rhs > 0 ? i.report.lhs / i.report.rhs : 0.0);
      std::printf("instances          %zu\n", r.instances.size());
      std::printf("satisfied          %.1f%%\n", 100.0 * r.satisfied_fraction());
      std::printf("median max/bound   %.3e\n", maxent_sb::median(ratios));
      return r.satisfied_fraction() == 1.0 ? 0 : 1;
    }
    if (*witness) {
      const auto r = maxent_sb::run_witness(ctx);
      std::printf("max Delta          %.6e\n", r.series.max_delta());
      std::printf("bound              %.6e\n", r.report.rhs);
      std::printf("initial distance   %.6e\n", r.series.initial_distance);
      return r.report.satisfied ? 0 : 1;
    }
    if (*validate) {
      maxent_sb::ValidationConfig vc;
      vc.quick = quick;
      vc.seed = seed;
      vc.workers = workers;
      const auto results = maxent_sb::run_validation(vc);
      maxent_sb::print_validation_table(std::cout, results);
      return maxent_sb::all_passed(results) ? 0 : 1;
    }
  } catch (const maxent_sb::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s (best residual %.3e after %d iterations)\n", e.what(), e.best_residual(),
                 e.iterations());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
