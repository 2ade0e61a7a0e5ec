// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <vector>

#include "radial/radial.hpp"

using namespace radial;

namespace {

struct CriterionResult {
  explicit CriterionResult(std::string name_) : name(std::move(name_)) {}

  std::string name;
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail << why;
    }
  }
};

struct LpCase {
  LpInstance lp;
  OracleSolution oracle;
};

struct SdpCase {
  SdpInstance sdp;
  OracleSolution oracle;
};

struct RunStats {
  bool smoothed = false;
  int n = 0;
  double diam = 0.0;
  double eps = 0.0;
  double c_anchor = 0.0;
  double opt_val = 0.0;
  double gap = 0.0;
  RunStatus status = RunStatus::uncertified;
  long stage_budget = 0;
  long final_iterations = 0;
  std::vector<StageRecord> stages;
};

constexpr double kEpsGrid[] = {0.5, 0.25, 0.1};

double log_base(double x, double base) { return std::log(x) / std::log(base); }

std::vector<LpCase> build_lp_corpus(int count) {
  std::vector<LpCase> corpus;
  for (int i = 0; i < count; ++i) {
    const int n = 2 + (i % 9);  // n <= 10
    LpCase c{gen_simplex_lp(n, 1000 + static_cast<std::uint64_t>(i)), {}};
    c.oracle = lp_vertex_oracle(c.lp);
    corpus.push_back(std::move(c));
  }
  return corpus;
}

std::vector<SdpCase> build_sdp_corpus(int count) {
  std::vector<SdpCase> corpus;
  for (int i = 0; i < count; ++i) {
    const int n = 2 + (i % 5);  // n <= 6
    auto [sdp, oracle] = sdp_constructed_oracle(n, 500 + static_cast<std::uint64_t>(i));
    corpus.push_back({std::move(sdp), std::move(oracle)});
  }
  return corpus;
}

template <class Kernel>
RunStats run_one(const Kernel& kernel, double opt_val, double eps, bool smoothed) {
  RunStats stats;
  stats.smoothed = smoothed;
  stats.n = kernel.dim();
  stats.diam = kernel.instance().diam;
  stats.eps = eps;
  stats.c_anchor = kernel.anchor_objective();
  stats.opt_val = opt_val;
  auto result = smoothed ? smoothed_scheme(kernel, eps, stats.diam, default_outer_cap())
                         : nonsmoothed_scheme(kernel, eps, stats.diam, default_outer_cap());
  stats.status = result.status;
  stats.gap = relative_gap(result.objective, opt_val, stats.c_anchor);
  stats.stage_budget = result.stage_budget;
  stats.final_iterations = result.final_iterations;
  stats.stages = std::move(result.stages);
  return stats;
}

// ---------------------------------------------------------------------------

void criterion_end_to_end(std::vector<RunStats>& all_runs, std::vector<CriterionResult>& out) {
  CriterionResult c("1 end-to-end gap");
  const auto started = std::chrono::steady_clock::now();

  const auto lps = build_lp_corpus(50);
  const auto sdps = build_sdp_corpus(20);
  double worst_slack = 1.0;
  for (const LpCase& lc : lps) {
    const LpKernel kernel(lc.lp);
    for (double eps : kEpsGrid)
      for (bool smoothed : {false, true}) {
        RunStats stats = run_one(kernel, lc.oracle.opt_val, eps, smoothed);
        c.require(stats.status == RunStatus::certified, "LP run not certified");
        c.require(stats.gap <= eps + 1e-7, "LP gap " + std::to_string(stats.gap) + " above eps " + std::to_string(eps));
        worst_slack = std::min(worst_slack, eps - stats.gap);
        all_runs.push_back(std::move(stats));
      }
  }
  for (const SdpCase& sc : sdps) {
    const SdpKernel kernel(sc.sdp);
    for (double eps : kEpsGrid)
      for (bool smoothed : {false, true}) {
        RunStats stats = run_one(kernel, sc.oracle.opt_val, eps, smoothed);
        c.require(stats.status == RunStatus::certified, "SDP run not certified");
        c.require(stats.gap <= eps + 1e-7,
                  "SDP gap " + std::to_string(stats.gap) + " above eps " + std::to_string(eps));
        worst_slack = std::min(worst_slack, eps - stats.gap);
        all_runs.push_back(std::move(stats));
      }
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  c.require(seconds < 60.0, "runtime " + std::to_string(seconds) + "s exceeds 60s");
  if (c.pass)
    c.detail << "420 runs certified, min gap slack " << worst_slack << ", " << seconds << "s";
  out.push_back(std::move(c));
}

void criterion_subgradient_bound(std::vector<CriterionResult>& out) {
  CriterionResult c("2 subgradient distance-over-root-N bound");
  int runs = 0;
  double worst = -1.0;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    const int n = 3 + static_cast<int>(seed % 5);
    const LpInstance lp = gen_simplex_lp(n, seed);
    const LpKernel kernel(lp);
    const VectorXd x0 = kernel.default_start(1.0);
    const OracleSolution oracle = lp_vertex_oracle(lp, kernel.objective(x0));
    std::vector<long> grid{stage_iterations_nonsmoothed(lp.diam)};
    for (double eps : kEpsGrid) grid.push_back(final_iterations_nonsmoothed(lp.diam, eps));
    for (long n_iters : grid) {
      const auto result = subgradient_method(kernel, x0, lp.diam, n_iters);
      const double achieved = oracle.slice_lambda - result.best_lambda;
      const double bound = lp.diam / std::sqrt(static_cast<double>(n_iters));
      c.require(achieved <= bound + 1e-8,
                "bound violated: " + std::to_string(achieved) + " > " + std::to_string(bound));
      worst = std::max(worst, achieved - bound);
      ++runs;
    }
  }
  if (c.pass) c.detail << runs << " runs, max (achieved - bound) = " << worst;
  out.push_back(std::move(c));
}

void criterion_iteration_ceilings(const std::vector<RunStats>& runs, std::vector<CriterionResult>& out) {
  CriterionResult c("3 iteration-count ceilings");
  double min_margin = 1e300;
  for (const RunStats& r : runs) {
    if (r.status != RunStatus::certified || r.stages.empty()) continue;
    const double val0 = r.stages.front().val;
    const double ratio0 = (r.c_anchor - r.opt_val) / (r.c_anchor - val0);
    const double log_term = log_base(std::max(ratio0, 1.0), r.smoothed ? 1.25 : 1.5);
    const double bound = r.smoothed
                             ? 12.0 * std::sqrt(std::log(static_cast<double>(r.n))) * r.diam * (1.0 / r.eps + log_term)
                             : (9.0 * r.diam * r.diam + 1.0) * (1.0 / (r.eps * r.eps) + log_term);
    // Stage-loop cost enters once per retraction; the terminating stage is
    // not covered by the stated product, so the executed total is bounded by
    // the formula plus one stage budget.
    long accounted = r.final_iterations;
    for (size_t i = 0; i + 1 < r.stages.size(); ++i) accounted += r.stages[i].inner_iterations;
    long executed = accounted + r.stages.back().inner_iterations;
    c.require(static_cast<double>(accounted) <= bound + 1e-6,
              "accounted " + std::to_string(accounted) + " exceeds bound " + std::to_string(bound));
    c.require(static_cast<double>(executed) <= bound + static_cast<double>(r.stage_budget) + 1e-6,
              "executed " + std::to_string(executed) + " exceeds bound plus one stage budget");
    min_margin = std::min(min_margin, bound - static_cast<double>(accounted));
  }
  if (c.pass) c.detail << "min (bound - accounted) = " << min_margin;
  out.push_back(std::move(c));
}

void criterion_stage_growth(const std::vector<RunStats>& runs, std::vector<CriterionResult>& out) {
  CriterionResult c("4 stage growth and stage-count bounds");
  long transitions = 0;
  for (const RunStats& r : runs) {
    if (r.status != RunStatus::certified || r.stages.empty()) continue;
    const double factor = r.smoothed ? 1.25 : 1.5;
    for (size_t i = 1; i < r.stages.size(); ++i) {
      c.require(r.stages[i].val < r.stages[i - 1].val, "stage level failed to improve");
      c.require(r.c_anchor - r.stages[i].val >= factor * (r.c_anchor - r.stages[i - 1].val) - 1e-9,
                "headroom growth below " + std::to_string(factor));
      ++transitions;
    }
    const double val0 = r.stages.front().val;
    const double ratio0 = (r.c_anchor - r.opt_val) / (r.c_anchor - val0);
    const double bound = log_base(std::max(ratio0, 1.0), factor);
    c.require(static_cast<double>(r.stages.size() - 1) <= bound + 1e-9,
              "retraction count " + std::to_string(r.stages.size() - 1) + " above log bound " +
                  std::to_string(bound));
  }
  if (c.pass) c.detail << transitions << " transitions checked";
  out.push_back(std::move(c));
}

void criterion_accuracy_iff(std::vector<CriterionResult>& out) {
  CriterionResult c("5 gap/accuracy equivalence");
  std::mt19937_64 rng(2024);
  long checks = 0;

  const auto check_lp = [&](const LpInstance& lp) {
    const LpKernel kernel(lp);
    const double c_anchor = kernel.anchor_objective();
    const OracleSolution opt = lp_vertex_oracle(lp);
    for (double frac : {0.35, 0.7}) {
      const double val = opt.opt_val + frac * (c_anchor - opt.opt_val);
      const OracleSolution slice = lp_vertex_oracle(lp, val);
      for (int trial = 0; trial < 50; ++trial) {
        const VectorXd x = [&] {
          std::normal_distribution<double> normal(0.0, 1.0);
          VectorXd dir(lp.n());
          for (int i = 0; i < lp.n(); ++i) dir[i] = normal(rng);
          return VectorXd(slice.slice_point + 1.5 * kernel.project(dir));
        }();
        const double gap = relative_gap(kernel.objective(kernel.boundary_projection(x)), opt.opt_val, c_anchor);
        const double lam = kernel.lambda_min(x);
        for (double eps : {0.1, 0.25, 0.5}) {
          const bool lhs = gap <= eps;
          const bool rhs = slice.slice_lambda - lam <= accuracy_threshold(eps, val, opt.opt_val, c_anchor);
          c.require(lhs == rhs, "equivalence violated at eps " + std::to_string(eps));
          ++checks;
        }
      }
    }
  };
  check_lp(gen_simplex_lp(4, 71));
  check_lp(gen_simplex_lp(7, 72));

  for (std::uint64_t seed : {81u, 82u}) {
    const auto [sdp, oracle] = sdp_constructed_oracle(4, seed);
    const SdpKernel kernel(sdp);
    const double c_anchor = kernel.anchor_objective();
    for (double frac : {0.35, 0.7}) {
      const double val = oracle.opt_val + frac * (c_anchor - oracle.opt_val);
      const MatrixXd x_star = constructed_slice_optimum(sdp, oracle, val);
      const double lambda_star = kernel.lambda_min(x_star);
      for (int trial = 0; trial < 25; ++trial) {
        const MatrixXd x = x_star + kernel.project(random_symmetric(kernel.dim(), rng));
        const double gap = relative_gap(kernel.objective(kernel.boundary_projection(x)), oracle.opt_val, c_anchor);
        const double lam = kernel.lambda_min(x);
        for (double eps : {0.1, 0.25, 0.5}) {
          const bool lhs = gap <= eps;
          const bool rhs = lambda_star - lam <= accuracy_threshold(eps, val, oracle.opt_val, c_anchor);
          c.require(lhs == rhs, "equivalence violated on SDP");
          ++checks;
        }
      }
    }
  }
  if (c.pass) c.detail << checks << " point/eps checks, zero violations";
  out.push_back(std::move(c));
}

void criterion_smoothing(std::vector<CriterionResult>& out) {
  CriterionResult c("6 smoothing analytics");
  std::mt19937_64 rng(4096);
  int sandwiched = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + (trial % 7);  // n <= 8
    const MatrixXd x = 3.0 * random_symmetric(n, rng);
    const double lo = lambda_min(x);
    for (double mu : {0.05, 0.2, 1.0}) {
      const double f = soft_min_value(x, mu);
      c.require(f <= lo + 1e-12 && f >= lo - mu * std::log(static_cast<double>(n)) - 1e-12,
                "sandwich violated");
      ++sandwiched;
    }
  }

  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + (trial % 7);
    const MatrixXd x = random_symmetric(n, rng);
    const MatrixXd d = random_symmetric(n, rng);
    for (double mu : {0.05, 0.5}) {
      const double analytic = trace_dot(soft_min_gradient(x, mu).mat(), d);
      const double numeric =
          (soft_min_value(MatrixXd(x + h * d), mu) - soft_min_value(MatrixXd(x - h * d), mu)) / (2.0 * h);
      c.require(std::abs(analytic - numeric) <= 1e-5 * (1.0 + std::abs(analytic)),
                "finite-difference mismatch " + std::to_string(std::abs(analytic - numeric)));
    }
  }

  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + (trial % 7);
    const MatrixXd x = 2.0 * random_symmetric(n, rng);
    const MatrixXd y = x + 0.7 * random_symmetric(n, rng);
    for (double mu : {0.05, 0.5}) {
      const double num = (soft_min_gradient(x, mu).mat() - soft_min_gradient(y, mu).mat()).norm();
      c.require(num <= (1.0 / mu) * (x - y).norm() * (1.0 + 1e-6), "Lipschitz ratio above 1/mu");
    }
  }
  if (c.pass) c.detail << sandwiched << " sandwich checks plus derivative and Lipschitz grids";
  out.push_back(std::move(c));
}

void criterion_scaling_equivalence(std::vector<CriterionResult>& out) {
  CriterionResult c("7 anchor-scaling equivalence");
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(i));
    const int n = 3 + (i % 2);
    const MatrixXd e_mat = random_spd(n, rng);
    std::vector<SymMatrix> a;
    a.emplace_back(random_symmetric(n, rng));
    a.emplace_back(random_symmetric(n, rng));
    SdpInstance sdp(a, VectorXd(), SymMatrix(random_symmetric(n, rng)), SymMatrix(e_mat), 6.0);
    sdp.b = sdp.apply_constraints(e_mat);
    if (!validate(sdp).passed()) {
      c.require(false, "random scaled instance failed validation");
      continue;
    }
    const SdpKernel metric_kernel(sdp);
    const auto [scaled, ctx] = scale_to_identity(sdp);
    const SdpKernel trace_kernel(scaled);
    const MatrixXd x0 = metric_kernel.default_start(1.0);
    const MatrixXd y0 = ctx.to_scaled(x0);

    std::vector<MatrixXd> metric_iterates, trace_iterates;
    const bool use_agm = i % 2 == 1;
    if (use_agm) {
      accelerated_method(metric_kernel, x0, 0.25, 200,
                         [&](long, double, const MatrixXd& it) { metric_iterates.push_back(it); });
      accelerated_method(trace_kernel, y0, 0.25, 200,
                         [&](long, double, const MatrixXd& it) { trace_iterates.push_back(it); });
    } else {
      subgradient_method(metric_kernel, x0, 2.0, 200,
                         [&](long, double, const MatrixXd& it) { metric_iterates.push_back(it); });
      subgradient_method(trace_kernel, y0, 2.0, 200,
                         [&](long, double, const MatrixXd& it) { trace_iterates.push_back(it); });
    }
    c.require(metric_iterates.size() == trace_iterates.size() && metric_iterates.size() == 200,
              "iterate counts diverged");
    for (size_t k = 0; k < std::min(metric_iterates.size(), trace_iterates.size()); ++k) {
      const double drift = (ctx.to_scaled(metric_iterates[k]) - trace_iterates[k]).norm();
      worst = std::max(worst, drift);
      c.require(drift <= 1e-7, "iterate drift " + std::to_string(drift) + " at k=" + std::to_string(k));
    }
  }
  if (c.pass) c.detail << "10 paired runs of 200 iterations, max drift " << worst;
  out.push_back(std::move(c));
}

void criterion_central_path(std::vector<CriterionResult>& out) {
  CriterionResult c("8 central-path start quality and ceilings");
  for (int i = 0; i < 6; ++i) {
    const int n = 3 + (i % 4);
    const int m = 2 + (i % 2);
    const SdpInstance sdp = gen_central_path_sdp(n, m, 1.0, 7000 + static_cast<std::uint64_t>(i));
    const SdpKernel kernel(sdp);
    const double c_anchor = kernel.anchor_objective();
    const double val0 = kernel.objective(kernel.default_start(1.0));
    const MatrixXd pi = kernel.pi_objective();
    const double pi_norm = kernel.norm(pi);

    // certified bracket for the optimal value from a fine run
    const double fine_eps = 0.02;
    const auto fine = smoothed_scheme(kernel, fine_eps, sdp.diam, default_outer_cap());
    c.require(fine.status == RunStatus::certified, "fine run aborted");
    const double opt_ub = fine.objective;
    const double opt_lb = std::max(fine.certificate ? fine.certificate->opt_lower : -1e300,
                                   (fine.objective - fine_eps * c_anchor) / (1.0 - fine_eps));
    c.require(opt_lb <= opt_ub + 1e-9, "optimal-value bracket inverted");

    // start-quality chain: cE - val0 >= |pi(C)| and cE - opt <= n |pi(C)|,
    // asserted with the conservative ends of the bracket
    c.require(c_anchor - val0 >= pi_norm - 1e-9, "default start shallower than |pi(C)|");
    c.require(c_anchor - opt_lb <= n * pi_norm + 1e-6 * (1.0 + n * pi_norm), "headroom above n |pi(C)|");
    const double ratio0 = (c_anchor - opt_lb) / (c_anchor - val0);
    c.require(ratio0 <= static_cast<double>(n) + 1e-7,
              "start ratio " + std::to_string(ratio0) + " above n = " + std::to_string(n));

    // iteration ceilings specialize to diam = n and the log of n
    for (double eps : {0.25, 0.1}) {
      for (bool smoothed : {false, true}) {
        RunStats stats = run_one(kernel, opt_ub, eps, smoothed);
        c.require(stats.status == RunStatus::certified, "central-path run aborted");
        long accounted = stats.final_iterations;
        for (size_t s = 0; s + 1 < stats.stages.size(); ++s) accounted += stats.stages[s].inner_iterations;
        const double nn = static_cast<double>(n);
        const double bound =
            smoothed ? 12.0 * std::sqrt(std::log(nn)) * nn * (1.0 / eps + log_base(nn, 1.25) + 1.0)
                     : (9.0 * nn * nn + 1.0) * (1.0 / (eps * eps) + log_base(nn, 1.5));
        c.require(static_cast<double>(accounted) <= bound + 1e-6,
                  "accounted iterations " + std::to_string(accounted) + " above ceiling " +
                      std::to_string(bound));
      }
    }
  }
  if (c.pass) c.detail << "6 central-path instances within the specialized ceilings";
  out.push_back(std::move(c));
}

void criterion_determinism(std::vector<CriterionResult>& out) {
  CriterionResult c("9 determinism");
  const LpInstance lp = gen_simplex_lp(6, 321);
  SchemeConfig config;
  config.scheme = SchemeChoice::smoothed;
  config.epsilon = 0.2;
  config.seed = 99;

  json a = report_to_json(radial::run(lp, config, {}, "fixedhash"));
  json b = report_to_json(radial::run(lp, config, {}, "fixedhash"));
  a.erase("timestamp");
  b.erase("timestamp");
  c.require(a.dump() == b.dump(), "reports differ beyond the timestamp");

  const auto [sdp, oracle] = sdp_constructed_oracle(4, 321);
  config.scheme = SchemeChoice::nonsmoothed;
  json s1 = report_to_json(radial::run(sdp, config, {}, "fixedhash"));
  json s2 = report_to_json(radial::run(sdp, config, {}, "fixedhash"));
  s1.erase("timestamp");
  s2.erase("timestamp");
  c.require(s1.dump() == s2.dump(), "SDP reports differ beyond the timestamp");
  if (c.pass) c.detail << "byte-identical reports modulo timestamp";
  out.push_back(std::move(c));
}

}  // namespace

int main() {
  std::vector<CriterionResult> results;
  std::vector<RunStats> corpus_runs;

  criterion_end_to_end(corpus_runs, results);
  criterion_subgradient_bound(results);
  criterion_iteration_ceilings(corpus_runs, results);
  criterion_stage_growth(corpus_runs, results);
  criterion_accuracy_iff(results);
  criterion_smoothing(results);
  criterion_scaling_equivalence(results);
  criterion_central_path(results);
  criterion_determinism(results);

  int failures = 0;
  for (const CriterionResult& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.name;
    const std::string detail = r.detail.str();
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!r.pass) ++failures;
  }
  return failures;
}
