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


#pragma once

// Experiment drivers behind the command-line tool: model descriptors, the
// solve command, the figure sweeps and the witness export. Every run is a
// pure function of (config, seed); worker count never changes the output.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxent_sb/bounds.hpp"
#include "maxent_sb/csv.hpp"
#include "maxent_sb/matrix_io.hpp"
#include "maxent_sb/parallel.hpp"

namespace maxent_sb {

using nlohmann::json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

template <class T>
T config_value(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key) || cfg.at(key).is_null()) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

struct RunContext {
  json config = json::object();  // effective configuration (file merged with flags)
  std::uint64_t seed = 1;
  std::string out_dir;  // empty: do not write files
  int workers = 1;
  bool quick = false;
  std::string base_dir;  // relative paths in the config resolve against this

  /// Hash of the effective config; seed, output directory and worker count
  /// are excluded.
  std::string config_hash() const { return hex64(fnv1a64(config.dump())); }

  SolverOptions solver() const {
    SolverOptions o;
    o.tol = config_value(config, "tol", o.tol);
    o.max_iter = config_value(config, "max_iter", o.max_iter);
    o.damping = config_value(config, "damping", o.damping);
    o.eigen_floor = config_value(config, "eigen_floor", o.eigen_floor);
    if (!(o.tol > 0.0) || o.max_iter < 1 || !(o.damping > 0.0) || !(o.eigen_floor > 0.0)) {
      throw ConfigError("solver options must be positive");
    }
    return o;
  }

  std::string resolve(const std::string& path) const {
    if (path.empty() || base_dir.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(base_dir) / path).string();
  }

  std::string output_path(const std::string& name) const { return (std::filesystem::path(out_dir) / name).string(); }

  void ensure_out_dir() const {
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  }
};

// ---------------------------------------------------------------------------
// Model descriptors: {"model": "jc" | "central-spin" | "random" | "file", ...}

struct ModelSpec {
  std::string kind;
  HamiltonianModel model;
  std::optional<JaynesCummingsParams> jc;
  std::optional<CentralSpinParams> central_spin;
  std::vector<std::string> warnings;
};

inline ModelSpec model_from_json(const RunContext& ctx, double beta) {
  const json& cfg = ctx.config;
  const std::string kind = config_value<std::string>(cfg, "model", "");
  if (kind == "jc") {
    JaynesCummingsParams p;
    p.omega_a = config_value(cfg, "omega_a", 1.0);
    p.omega = config_value(cfg, "omega", 1.0);
    p.j_coupling = config_value(cfg, "j", 1e-3);
    p.n_max = config_value(cfg, "n_max", beta > 0.0 ? default_fock_cutoff(beta, p.omega) : 30);
    ModelSpec spec{kind, build_jaynes_cummings(p), p, std::nullopt, advisories(p)};
    return spec;
  }
  if (kind == "central-spin") {
    CentralSpinParams p;
    p.n_bath = config_value(cfg, "n", 1);
    p.g = config_value(cfg, "g", 1e-3);
    return {kind, build_central_spin(p), std::nullopt, p, {}};
  }
  if (kind == "random") {
    const auto d_s = config_value<Index>(cfg, "d_s", 2);
    const auto d_b = config_value<Index>(cfg, "d_b", 2);
    const double frac = config_value(cfg, "sb_fraction", 0.01);
    const auto model_seed = config_value<std::uint64_t>(cfg, "model_seed", derive_seed(ctx.seed, 0));
    return {kind, build_random_model(d_s, d_b, frac, model_seed), std::nullopt, std::nullopt, {}};
  }
  if (kind == "file") {
    const auto load = [&](const char* key) {
      const std::string path = config_value<std::string>(cfg, key, "");
      if (path.empty()) throw ConfigError(std::string("file model needs '") + key + "'");
      return load_operator(ctx.resolve(path));
    };
    return {kind, HamiltonianModel(load("h_s"), load("h_b"), load("h_sb")), std::nullopt, std::nullopt, {}};
  }
  throw ConfigError("unknown or missing model kind '" + kind + "' (expected jc, central-spin, random or file)");
}

/// rho_S from the config: "rho_s" as a matrix file path or {"bloch": [x,y,z]};
/// otherwise a Hilbert-Schmidt random state drawn from (seed, stream).
inline DensityOperator system_state_from_json(const RunContext& ctx, const char* key, Index d_s, std::uint64_t stream) {
  const json& cfg = ctx.config;
  if (cfg.contains(key) && !cfg.at(key).is_null()) {
    const json& v = cfg.at(key);
    if (v.is_string()) return DensityOperator(load_operator(ctx.resolve(v.get<std::string>())));
    if (v.is_object() && v.contains("bloch")) {
      const auto s = v.at("bloch").get<std::vector<double>>();
      if (s.size() != 3 || d_s != 2) throw ConfigError(std::string(key) + ": bloch needs 3 components and a qubit system");
      return BlochState::from_vector(Eigen::Vector3d(s[0], s[1], s[2])).density();
    }
    throw ConfigError(std::string(key) + ": expected a matrix file path or {\"bloch\": [x, y, z]}");
  }
  return random_density(d_s, derive_seed(ctx.seed, stream));
}

// ---------------------------------------------------------------------------
// solve

struct SolveResult {
  ModelSpec model;
  DensityOperator rho_s;
  double beta = 0.0;
  MaxEntSolution solution;
  double entropy = 0.0;
  double conditional_entropy = 0.0;
  double correlation_norm = 0.0;
  std::vector<std::string> warnings;
  json summary;
};

/// Writes solution.json plus lambda.txt, lambda0.txt, delta_lambda.txt,
/// rho_me.txt and rho_s.txt when an output directory is set.
inline SolveResult run_solve(const RunContext& ctx) {
  const double beta = config_value(ctx.config, "beta", 1.0);
  ModelSpec model = model_from_json(ctx, beta);
  DensityOperator rho_s = system_state_from_json(ctx, "rho_s", model.model.layout().d_s(), 1);
  const AssignmentMethod method = parse_assignment_method(config_value<std::string>(ctx.config, "method", "exact"));
  const SolverOptions opts = ctx.solver();

  MaxEntSolution sol = assign(Constraint(rho_s, beta, model.model), method, opts);
  const auto& layout = model.model.layout();
  const double s_joint = von_neumann_entropy(sol.joint_state);
  const double s_cond = conditional_entropy(sol.joint_state, layout);
  const double corr = correlation_norm(sol.joint_state, layout);

  std::vector<std::string> warnings = model.warnings;
  warnings.insert(warnings.end(), sol.warnings.begin(), sol.warnings.end());

  json summary = {
      {"method", std::string(to_string(sol.method))},
      {"residual", sol.residual},
      {"iterations", sol.iterations},
      {"beta", beta},
      {"seed", ctx.seed},
      {"config_hash", ctx.config_hash()},
      {"gauge_shift", sol.gauge_shift},
      {"damping_used", sol.damping_used},
      {"delta_lambda_first_order_trace_norm", trace_norm(delta_lambda(model.model, beta))},
      {"lambda_minus_lambda0_trace_norm", trace_norm(sol.delta_lambda)},
      {"entropy", s_joint},
      {"conditional_entropy", s_cond},
      {"correlation_norm", corr},
      {"d_s", layout.d_s()},
      {"d_b", layout.d_b()},
      {"matrices",
       {{"lambda", "lambda.txt"},
        {"lambda0", "lambda0.txt"},
        {"delta_lambda", "delta_lambda.txt"},
        {"rho_me", "rho_me.txt"},
        {"rho_s", "rho_s.txt"}}},
      {"warnings", warnings},
  };

  if (!ctx.out_dir.empty()) {
    ctx.ensure_out_dir();
    save_operator(ctx.output_path("lambda.txt"), sol.lambda_op);
    save_operator(ctx.output_path("lambda0.txt"), sol.lambda0_op);
    save_operator(ctx.output_path("delta_lambda.txt"), sol.delta_lambda);
    save_operator(ctx.output_path("rho_me.txt"), sol.joint_state.op());
    save_operator(ctx.output_path("rho_s.txt"), rho_s.op());
    std::ofstream os(ctx.output_path("solution.json"));
    if (!os) throw Error("cannot write solution.json");
    os << summary.dump(2) << '\n';
  }
  return {std::move(model), std::move(rho_s), beta, std::move(sol), s_joint, s_cond, corr, std::move(warnings),
          std::move(summary)};
}

// ---------------------------------------------------------------------------
// fig1 / fig2: deviation bound on the central-spin model

struct SweepRow {
  double key = 0.0;  // N or g
  BoundReport report;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  CsvTable table{{"x"}};
};

inline CsvTable sweep_table(const std::vector<SweepRow>& rows, const std::string& key) {
  CsvTable table({key, "lhs", "rhs", "slack", "satisfied"});
  for (const auto& r : rows) {
    table.add_row({key == "N" ? CsvCell{static_cast<long long>(std::llround(r.key))} : CsvCell{r.key}, r.report.lhs,
                   r.report.rhs, r.report.slack, r.report.satisfied});
  }
  return table;
}

/// ||A(rho_S) - rho_S (x) rho_B^th||_1 and 4 beta ||H_SB||_1 versus the number
/// of bath spins (g fixed). Writes fig1.csv.
inline SweepResult run_fig1(const RunContext& ctx) {
  const double beta = config_value(ctx.config, "beta", 1.0);
  const double g = config_value(ctx.config, "g", 1e-3);
  const auto method = parse_assignment_method(config_value<std::string>(ctx.config, "method", "perturbative"));
  std::vector<int> default_n = ctx.quick ? std::vector<int>{1, 2, 3, 4, 5} : std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8};
  const auto n_values = config_value(ctx.config, "n_values", default_n);
  const DensityOperator rho_s = system_state_from_json(ctx, "rho_s", 2, 0);
  const SolverOptions opts = ctx.solver();

  std::vector<SweepRow> rows(n_values.size());
  parallel_for(n_values.size(), ctx.workers, [&](std::size_t i) {
    const int n = n_values[i];
    const Constraint c(rho_s, beta, build_central_spin({n, g}));
    rows[i] = {static_cast<double>(n), corollary1_check(c, method, opts, "N=" + std::to_string(n))};
  });
  SweepResult out{rows, sweep_table(rows, "N")};
  if (!ctx.out_dir.empty()) {
    ctx.ensure_out_dir();
    out.table.save(ctx.output_path("fig1.csv"), ctx.config_hash(), ctx.seed);
  }
  return out;
}

/// Same quantities versus g at fixed N (default 1). Writes fig2.csv.
inline SweepResult run_fig2(const RunContext& ctx) {
  const double beta = config_value(ctx.config, "beta", 1.0);
  const int n = config_value(ctx.config, "n", 1);
  const auto method = parse_assignment_method(config_value<std::string>(ctx.config, "method", "perturbative"));
  const auto g_values = config_value(ctx.config, "g_values", std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4, 1e-5});
  const DensityOperator rho_s = system_state_from_json(ctx, "rho_s", 2, 0);
  const SolverOptions opts = ctx.solver();

  std::vector<SweepRow> rows(g_values.size());
  parallel_for(g_values.size(), ctx.workers, [&](std::size_t i) {
    const double g = g_values[i];
    const Constraint c(rho_s, beta, build_central_spin({n, g}));
    rows[i] = {g, corollary1_check(c, method, opts, "g=" + format_double(g))};
  });
  SweepResult out{rows, sweep_table(rows, "g")};
  if (!ctx.out_dir.empty()) {
    ctx.ensure_out_dir();
    out.table.save(ctx.output_path("fig2.csv"), ctx.config_hash(), ctx.seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// fig3: witness batch over random Hamiltonians

struct Fig3Instance {
  int hamiltonian = 0;
  int pair = 0;
  BoundReport report;
};

struct Fig3Result {
  std::vector<Fig3Instance> instances;
  WitnessSeries first_trace;
  CsvTable instance_table{{"x"}};
  CsvTable trace_table{{"x"}};

  double satisfied_fraction() const {
    if (instances.empty()) return 1.0;
    std::size_t ok = 0;
    for (const auto& i : instances) ok += i.report.satisfied ? 1 : 0;
    return static_cast<double>(ok) / static_cast<double>(instances.size());
  }
};

struct Fig3Config {
  int n_hamiltonians = 30;
  int n_pairs = 10;
  int n_times = 200;
  double t_max = 50.0;
  double beta = 1.0;
  double sb_fraction = 0.01;
  Index d_s = 2;
  Index d_b = 2;
  AssignmentMethod assignment = AssignmentMethod::exact;

  static Fig3Config from(const RunContext& ctx) {
    Fig3Config c;
    if (ctx.quick) {
      c.n_hamiltonians = 6;
      c.n_pairs = 4;
      c.n_times = 100;
    }
    c.n_hamiltonians = config_value(ctx.config, "n_hamiltonians", c.n_hamiltonians);
    c.n_pairs = config_value(ctx.config, "n_pairs", c.n_pairs);
    c.n_times = config_value(ctx.config, "n_times", c.n_times);
    c.t_max = config_value(ctx.config, "t_max", c.t_max);
    c.beta = config_value(ctx.config, "beta", c.beta);
    c.sb_fraction = config_value(ctx.config, "sb_fraction", c.sb_fraction);
    c.d_s = config_value(ctx.config, "d_s", c.d_s);
    c.d_b = config_value(ctx.config, "d_b", c.d_b);
    c.assignment = parse_assignment_method(config_value<std::string>(ctx.config, "assignment", "exact"));
    if (c.n_hamiltonians < 1 || c.n_pairs < 1) throw ConfigError("fig3 needs at least one Hamiltonian and one pair");
    return c;
  }
};

/// Writes fig3_instances.csv (per-pair max Delta and bound) and fig3_trace.csv
/// (the full Delta(t) series of the first pair of the first Hamiltonian).
inline Fig3Result run_fig3(const RunContext& ctx) {
  const Fig3Config cfg = Fig3Config::from(ctx);
  const SolverOptions opts = ctx.solver();
  const auto grid = uniform_time_grid(cfg.t_max, cfg.n_times);
  const std::uint64_t model_stream = derive_seed(ctx.seed, 3);
  const std::uint64_t state_stream = derive_seed(ctx.seed, 4);

  std::vector<std::vector<Fig3Instance>> per_h(static_cast<std::size_t>(cfg.n_hamiltonians));
  std::optional<WitnessSeries> first;
  parallel_for(per_h.size(), ctx.workers, [&](std::size_t h) {
    const HamiltonianModel model = build_random_model(cfg.d_s, cfg.d_b, cfg.sb_fraction, derive_seed(model_stream, h));
    const EvolutionSpec spec(model, grid, cfg.assignment);
    const Propagator u(model);
    for (int p = 0; p < cfg.n_pairs; ++p) {
      const std::uint64_t base = (h * static_cast<std::uint64_t>(cfg.n_pairs) + static_cast<std::uint64_t>(p)) * 2;
      const DensityOperator a = random_density(cfg.d_s, derive_seed(state_stream, base));
      const DensityOperator b = random_density(cfg.d_s, derive_seed(state_stream, base + 1));
      const MaxEntSolution sa = assign(Constraint(a, cfg.beta, model), cfg.assignment, opts);
      const MaxEntSolution sb = assign(Constraint(b, cfg.beta, model), cfg.assignment, opts);
      WitnessSeries w = witness_from_joint(spec, sa.joint_state, sb.joint_state, a, b, cfg.beta, u);
      per_h[h].push_back({static_cast<int>(h), p,
                          corollary2_check(w, "H=" + std::to_string(h) + ",pair=" + std::to_string(p))});
      if (h == 0 && p == 0) first = std::move(w);
    }
  });

  Fig3Result out;
  for (auto& v : per_h)
    for (auto& inst : v) out.instances.push_back(std::move(inst));
  out.first_trace = std::move(*first);
  out.instance_table = CsvTable({"hamiltonian", "pair", "max_delta", "bound", "slack", "satisfied"});
  for (const auto& i : out.instances) {
    out.instance_table.add_row({static_cast<long long>(i.hamiltonian), static_cast<long long>(i.pair), i.report.lhs,
                                i.report.rhs, i.report.slack, i.report.satisfied});
  }
  out.trace_table = witness_table(out.first_trace);
  if (!ctx.out_dir.empty()) {
    ctx.ensure_out_dir();
    out.instance_table.save(ctx.output_path("fig3_instances.csv"), ctx.config_hash(), ctx.seed);
    out.trace_table.save(ctx.output_path("fig3_trace.csv"), ctx.config_hash(), ctx.seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// witness: one Delta(t) series for an arbitrary model

struct WitnessResult {
  WitnessSeries series;
  BoundReport report;
  CsvTable table{{"x"}};
};

/// Writes witness.csv.
inline WitnessResult run_witness(const RunContext& ctx) {
  const double beta = config_value(ctx.config, "beta", 1.0);
  const ModelSpec model = model_from_json(ctx, beta);
  const Index ds = model.model.layout().d_s();
  const DensityOperator a = system_state_from_json(ctx, "rho_s", ds, 1);
  const DensityOperator b = system_state_from_json(ctx, "rho_s_prime", ds, 2);
  const auto assignment = parse_assignment_method(config_value<std::string>(ctx.config, "assignment", "exact"));
  const auto grid = uniform_time_grid(config_value(ctx.config, "t_max", 50.0), config_value(ctx.config, "n_times", 200));
  const EvolutionSpec spec(model.model, grid, assignment);
  WitnessSeries w = witness_delta(spec, a, b, beta, ctx.solver());
  WitnessResult out{w, corollary2_check(w), witness_table(w)};
  if (!ctx.out_dir.empty()) {
    ctx.ensure_out_dir();
    out.table.save(ctx.output_path("witness.csv"), ctx.config_hash(), ctx.seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomized instances shared by the validation suites

struct RandomInstance {
  HamiltonianModel model;
  DensityOperator rho_s;
  double beta;
  double sb_fraction;
  std::string descriptor;
};

/// d_S in {2,3}, d_B in {2,3,4}, beta uniform in [0.1, 10], coupling fraction
/// log-uniform in [min_fraction, max_fraction].
inline RandomInstance random_instance(std::uint64_t seed, std::uint64_t index, double max_fraction = 0.05,
                                      double min_fraction = 1e-3) {
  Rng rng(derive_seed(seed, index));
  std::uniform_int_distribution<int> pick_ds(2, 3), pick_db(2, 4);
  std::uniform_real_distribution<double> pick_beta(0.1, 10.0);
  std::uniform_real_distribution<double> pick_log_frac(std::log(min_fraction), std::log(max_fraction));
  const Index d_s = pick_ds(rng);
  const Index d_b = pick_db(rng);
  const double beta = pick_beta(rng);
  const double frac = std::exp(pick_log_frac(rng));
  const std::uint64_t model_seed = rng();
  const std::uint64_t state_seed = rng();
  std::string desc = "i=" + std::to_string(index) + ",d_s=" + std::to_string(d_s) + ",d_b=" + std::to_string(d_b) +
                     ",beta=" + format_double(beta) + ",frac=" + format_double(frac);
  return {build_random_model(d_s, d_b, frac, model_seed), random_density(d_s, state_seed), beta, frac, std::move(desc)};
}

}  // namespace maxent_sb
