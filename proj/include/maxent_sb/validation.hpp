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

// The invariant suite behind `maxent-sb validate`. Each check returns a
// pass/fail row; the suite passes iff every row does.

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxent_sb/experiments.hpp"
#include "maxent_sb/fit.hpp"

namespace maxent_sb {

struct ValidationConfig {
  bool quick = false;
  std::uint64_t seed = 1;
  int workers = 1;
  /// Multiplies dLambda inside the perturbative assignment used by the
  /// Proposition-scaling check. Anything other than 1 is a deliberate fault.
  double delta_lambda_sign = 1.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

inline CheckResult timed(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  r.name = name;
  try {
    auto [ok, detail] = body();
    r.passed = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline Operator random_hermitian_with_spectrum(Index d, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> ev(static_cast<std::size_t>(d));
  for (auto& e : ev) e = u(rng);
  const Operator v = haar_unitary(d, rng);
  return (v * Operator::diagonal(ev) * v.adjoint()).hermitian_part();
}

}  // namespace detail

/// Slope of ||exact - perturbative||_1 against the coupling scale.
inline double proposition_slope(const HamiltonianModel& unit_model, const DensityOperator& rho_s, double beta,
                                const std::vector<double>& couplings, double delta_lambda_sign = 1.0,
                                const SolverOptions& opts = {}) {
  std::vector<double> gaps;
  for (double g : couplings) {
    const Constraint c(rho_s, beta, unit_model.with_coupling_scaled(g));
    const MaxEntSolution ex = solve_exact(c, opts);
    const MaxEntSolution pe = assignment_perturbative(c, opts.eigen_floor, delta_lambda_sign);
    gaps.push_back(trace_norm(ex.joint_state.op() - pe.joint_state.op()));
  }
  return loglog_slope(couplings, gaps);
}

inline std::vector<CheckResult> run_validation(const ValidationConfig& cfg) {
  using detail::fmt;
  std::vector<CheckResult> out;
  const std::uint64_t seed = cfg.seed;

  out.push_back(detail::timed("kernel: partial trace of products", [&] {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto rs = random_density(3, derive_seed(seed, 100 + i));
      const auto rb = random_density(4, derive_seed(seed, 200 + i));
      worst = std::max(worst, (partial_trace_B(kron(rs.op(), rb.op()), {3, 4}) - rs.op()).max_abs());
    }
    return std::pair{worst <= 1e-12, "max deviation " + fmt(worst)};
  }));

  out.push_back(detail::timed("kernel: log(exp(A)) round trip", [&] {
    Rng rng(derive_seed(seed, 300));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Operator a = detail::random_hermitian_with_spectrum(6, -5.0, 5.0, rng);
      worst = std::max(worst, (herm_logm_support(herm_expm(a), 1e-300) - a).max_abs());
    }
    return std::pair{worst <= 1e-8, "max deviation " + fmt(worst)};
  }));

  out.push_back(detail::timed("kernel: entropy unitary invariance, trace-norm triangle", [&] {
    Rng rng(derive_seed(seed, 400));
    double worst_entropy = 0.0;
    int triangle_violations = 0;
    for (int i = 0; i < 100; ++i) {
      const auto rho = random_density(4, derive_seed(seed, 500 + i));
      const Operator u = haar_unitary(4, rng);
      const auto rotated = DensityOperator::normalized(u * rho.op() * u.adjoint());
      worst_entropy = std::max(worst_entropy, std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated)));
      const Operator a(ginibre(4, 4, rng)), b(ginibre(4, 4, rng));
      if (trace_norm(a + b) > trace_norm(a) + trace_norm(b) + 1e-10) ++triangle_violations;
      if (trace_norm(a * b) > trace_norm(a) * trace_norm(b) + 1e-10) ++triangle_violations;
    }
    return std::pair{worst_entropy <= 1e-10 && triangle_violations == 0,
                     "entropy drift " + fmt(worst_entropy) + ", norm violations " + std::to_string(triangle_violations)};
  }));

  out.push_back(detail::timed("maxent: quadratic exact-vs-perturbative scaling", [&] {
    const std::vector<double> couplings{1e-1, 1e-2, 1e-3, 1e-4};
    const auto rho = random_density(2, derive_seed(seed, 600));
    const double s_cs =
        proposition_slope(build_central_spin({2, 1.0}), rho, 1.0, couplings, cfg.delta_lambda_sign);
    const double s_jc = proposition_slope(build_jaynes_cummings({1.0, 1.0, 1.0, default_fock_cutoff(1.0, 1.0)}), rho,
                                          1.0, couplings, cfg.delta_lambda_sign);
    const bool ok = std::abs(s_cs - 2.0) <= 0.2 && std::abs(s_jc - 2.0) <= 0.2;
    return std::pair{ok, "slope central-spin " + fmt(s_cs) + ", Jaynes-Cummings " + fmt(s_jc)};
  }));

  out.push_back(detail::timed("maxent: Jaynes-Cummings dLambda vanishes", [&] {
    double worst = 0.0;
    for (double beta : {0.1, 1.0, 5.0})
      for (double j : {1e-3, 0.05})
        for (int n_max : {2, 10, 30}) {
          const auto m = build_jaynes_cummings({1.3, 0.7, j, n_max});
          worst = std::max(worst, trace_norm(delta_lambda(m, beta)));
        }
    return std::pair{worst <= 1e-10, "max ||dLambda||_1 " + fmt(worst)};
  }));

  out.push_back(detail::timed("maxent: case limits (H_SB = 0, beta = 0)", [&] {
    const auto rho = random_density(3, derive_seed(seed, 700));
    const auto base = build_random_model(3, 3, 0.01, derive_seed(seed, 701));
    const auto decoupled = base.with_coupling_scaled(0.0);
    const Constraint c1(rho, 1.5, decoupled);
    const auto ex = solve_exact(c1);
    const Operator product = kron(rho.op(), thermal_state(decoupled.h_b(), 1.5).op());
    const double d1 = trace_norm(ex.joint_state.op() - product);
    const auto uni = solve_exact(Constraint(rho, 0.0, base));
    const double d0 = trace_norm(uni.joint_state.op() - kron(rho.op(), Operator::identity(3) / 3.0));
    return std::pair{d1 <= 1e-10 && d0 <= 1e-12 && ex.iterations <= 2,
                     "H_SB=0 gap " + fmt(d1) + " (" + std::to_string(ex.iterations) + " iters), beta=0 gap " + fmt(d0)};
  }));

  const int n_suite = cfg.quick ? 100 : 1000;
  out.push_back(detail::timed("bounds: deviation bound on randomized suite + solver robustness", [&] {
    std::vector<BoundReport> reports(static_cast<std::size_t>(n_suite));
    std::vector<int> iters(static_cast<std::size_t>(n_suite), -1);
    std::vector<double> residuals(static_cast<std::size_t>(n_suite), 1.0);
    parallel_for(reports.size(), cfg.workers, [&](std::size_t i) {
      const RandomInstance inst = random_instance(derive_seed(seed, 800), i);
      const Constraint c(inst.rho_s, inst.beta, inst.model);
      reports[i] = corollary1_check(c, AssignmentMethod::perturbative, {}, inst.descriptor);
      try {
        const auto sol = solve_exact(c);
        iters[i] = sol.iterations;
        residuals[i] = sol.residual;
      } catch (const ConvergenceError&) {
      }
    });
    int violations = 0, unconverged = 0;
    double min_slack = 1e300;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      violations += reports[i].satisfied ? 0 : 1;
      min_slack = std::min(min_slack, reports[i].slack);
      unconverged += (iters[i] >= 0 && iters[i] <= 500 && residuals[i] <= 1e-10) ? 0 : 1;
    }
    return std::pair{violations == 0 && unconverged == 0,
                     std::to_string(n_suite) + " instances, violations " + std::to_string(violations) + ", min slack " +
                         fmt(min_slack) + ", unconverged " + std::to_string(unconverged)};
  }));

  out.push_back(detail::timed("bounds: distinguishability bound on random-Hamiltonian batch", [&] {
    RunContext ctx;
    ctx.seed = seed;
    ctx.quick = cfg.quick;
    ctx.workers = cfg.workers;
    const Fig3Result r = run_fig3(ctx);
    std::vector<double> ratios;
    for (const auto& inst : r.instances) ratios.push_back(inst.report.lhs / inst.report.rhs);
    const double med = median(ratios);
    return std::pair{r.satisfied_fraction() == 1.0 && med <= 0.1,
                     std::to_string(r.instances.size()) + " pairs, satisfied " + fmt(100.0 * r.satisfied_fraction()) +
                         "%, median max-Delta/bound " + fmt(med)};
  }));

  out.push_back(detail::timed("bounds: conditional-entropy band", [&] {
    int outside = 0;
    double purify_gap = 0.0, uniform_gap = 0.0;
    for (int i = 0; i < (cfg.quick ? 10 : 50); ++i) {
      const RandomInstance inst = random_instance(derive_seed(seed, 900), static_cast<std::uint64_t>(i));
      const auto& layout = inst.model.layout();
      const Constraint c(inst.rho_s, inst.beta, inst.model);
      const double s_sys = von_neumann_entropy(inst.rho_s);
      const double hi = std::log(static_cast<double>(layout.d_b()));
      const double u = conditional_entropy(assignment_uniform(c).joint_state, layout);
      uniform_gap = std::max(uniform_gap, std::abs(u - hi));
      std::vector<DensityOperator> members{solve_exact(c).joint_state, assignment_perturbative(c).joint_state,
                                           assignment_factorized_thermal(c).joint_state};
      if (layout.d_b() >= layout.d_s()) {
        const auto pure = purify(inst.rho_s, layout.d_b());
        purify_gap = std::max(purify_gap, std::abs(conditional_entropy(pure, layout) + s_sys));
        members.push_back(pure);
      }
      for (const auto& m : members) {
        const double h = conditional_entropy(m, layout);
        if (h < -s_sys - 1e-9 || h > hi + 1e-9) ++outside;
      }
    }
    return std::pair{outside == 0 && purify_gap <= 1e-9 && uniform_gap <= 1e-9,
                     "outside band " + std::to_string(outside) + ", purification gap " + fmt(purify_gap) +
                         ", uniform gap " + fmt(uniform_gap)};
  }));

  out.push_back(detail::timed("bounds: Haar average converges as n^-1/2", [&] {
    const auto rho = random_density(2, derive_seed(seed, 1000));
    const Index d_b = 3;
    const Operator target = kron(rho.op(), Operator::identity(d_b) / 3.0);
    const std::vector<double> ns{1e2, 1e3, 1e4};
    const int repeats = cfg.quick ? 8 : 24;
    std::vector<double> err;
    for (double n : ns) {
      double sum = 0.0;
      for (int r = 0; r < repeats; ++r) {
        const auto mean = haar_average_mc(rho, d_b, static_cast<int>(n), derive_seed(seed, 1100 + r * 7 + static_cast<int>(std::log10(n))));
        sum += trace_norm(mean.op() - target);
      }
      err.push_back(sum / repeats);
    }
    const double slope = loglog_slope(ns, err);
    return std::pair{std::abs(slope + 0.5) <= 0.1, "slope " + fmt(slope)};
  }));

  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

inline void print_validation_table(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    char secs[32];
    std::snprintf(secs, sizeof(secs), "%7.2fs", r.seconds);
    os << (r.passed ? "PASS  " : "FAIL  ") << secs << "  " << r.name << "  [" << r.detail << "]\n";
  }
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  os << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                     : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
     << '\n';
}

}  // namespace maxent_sb
