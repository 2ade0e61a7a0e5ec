#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "radial/kernels.hpp"

namespace radial {

// ---------------------------------------------------------------------------
// Iteration budgets. Each is the exact ceiling of the prescribed expression;
// the ceiling is taken before the floor at one iteration.
// ---------------------------------------------------------------------------

inline long iteration_ceiling(double expr) {
  const double c = std::ceil(expr);
  if (c > 4.0e18) throw ConfigError("iteration budget overflows");
  return c < 1.0 ? 1L : static_cast<long>(c);
}

/// Inner budget of one nonsmoothed stage: ceil(9 diam^2).
inline long stage_iterations_nonsmoothed(double diam) { return iteration_ceiling(9.0 * diam * diam); }

/// Final nonsmoothed budget: ceil((3 diam / eps)^2).
inline long final_iterations_nonsmoothed(double diam, double eps) {
  const double root = 3.0 * diam / eps;
  return iteration_ceiling(root * root);
}

namespace detail {
inline double log_dim(int n) {
  if (n < 2) throw ConfigError("smoothed runs need dimension n >= 2");
  return std::log(static_cast<double>(n));
}
}  // namespace detail

/// Smoothing parameter of one smoothed stage: 1 / (6 ln n).
inline double stage_mu_smoothed(int n) { return 1.0 / (6.0 * detail::log_dim(n)); }

/// Inner budget of one smoothed stage: ceil(12 sqrt(ln n) diam - 2).
inline long stage_iterations_smoothed(double diam, int n) {
  return iteration_ceiling(12.0 * std::sqrt(detail::log_dim(n)) * diam - 2.0);
}

/// Final smoothing parameter: eps / (6 ln n).
inline double final_mu_smoothed(int n, double eps) { return eps / (6.0 * detail::log_dim(n)); }

/// Final smoothed budget: ceil(12 sqrt(ln n) diam / eps - 2).
inline long final_iterations_smoothed(double diam, int n, double eps) {
  return iteration_ceiling(12.0 * std::sqrt(detail::log_dim(n)) * diam / eps - 2.0);
}

/// Safety cap on outer stages; the provable stage counts are finite but
/// depend on the unknown optimal value.
inline int default_outer_cap() {
  return static_cast<int>(std::ceil(std::log(1e12) / std::log(1.2)));  // 152
}

// ---------------------------------------------------------------------------
// Observers
// ---------------------------------------------------------------------------

/// One completed inner run of a scheme stage.
struct StageRecord {
  int stage = 0;
  double val = 0.0;               // level the stage ran at
  long inner_iterations = 0;      // iterations actually executed
  double lambda_min_v = 0.0;      // lambda_min of the stage output V
  double seconds = 0.0;
};

struct SchemeObserver {
  std::function<void(const StageRecord&)> on_stage;
  std::function<void(int stage, long k, double value)> on_inner;
};

namespace detail {
class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};
}  // namespace detail

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

template <class K>
struct SubgradientResult {
  typename K::Point best;
  double best_lambda = 0.0;
  long iterations = 0;
  // A projected subgradient vanished: the tracked point is exactly optimal
  // for its slice and the run stopped early.
  bool zero_subgradient = false;
};

template <class K>
using IterationCallback = std::function<void(long k, double value, const typename K::Point& iterate)>;

namespace detail {
template <class K>
void check_start(const K& kernel, const typename K::Point& x0) {
  if (kernel.constraint_residual(x0) > 1e-9)
    throw ConfigError("start violates the linear equations");
  if (!(kernel.objective(x0) < kernel.anchor_objective()))
    throw ConfigError("start must have objective strictly below the anchor");
}
}  // namespace detail

/// Fixed-step projected subgradient ascent on lambda_min over the slice
/// {A(X) = b, <C,X> = <C,x0>}. Every step has length R/sqrt(N) in the
/// instance inner product and the best iterate is tracked; the output
/// satisfies lambda_min(slice optimum) - lambda_min(output) <= R/sqrt(N).
template <class K>
SubgradientResult<K> subgradient_method(const K& kernel, typename K::Point x0, double r, long n_iterations,
                                        const IterationCallback<K>& on_iteration = {}) {
  if (!(r > 0.0)) throw ConfigError("distance bound R must be positive");
  if (n_iterations < 1) throw ConfigError("iteration count must be positive");
  detail::check_start(kernel, x0);
  const double step_length = r / std::sqrt(static_cast<double>(n_iterations));

  auto [lam, grad] = kernel.lambda_and_subgradient(x0);
  SubgradientResult<K> out{std::move(x0), lam, 0, false};
  typename K::Point x = out.best;
  for (long k = 0; k < n_iterations; ++k) {
    const double gnorm = kernel.norm(grad);
    if (gnorm <= 1e-12) {
      out.zero_subgradient = true;
      return out;
    }
    x += (step_length / gnorm) * grad;
    std::tie(lam, grad) = kernel.lambda_and_subgradient(x);
    if (lam > out.best_lambda) {
      out.best = x;
      out.best_lambda = lam;
    }
    out.iterations = k + 1;
    if (on_iteration) on_iteration(k, lam, x);
  }
  return out;
}

template <class K>
struct AcceleratedResult {
  typename K::Point final;  // the last iterate, not the best one
  long iterations = 0;
};

/// Constant-step accelerated gradient ascent on the smoothed objective f_mu
/// over the slice through x0. The gradient step from the extrapolation point
/// uses step 1/L = mu; momentum follows the alpha recursion
/// alpha_{k+1}^2 = (1 - alpha_{k+1}) alpha_k^2 starting at alpha_0 = 1 with
/// extrapolation weight beta_k = alpha_k (1 - alpha_k) / (alpha_k^2 + alpha_{k+1}).
/// Gradients are projected, so iterates never leave the slice.
/// The callback sees the smoothed value at the evaluation point y_k and the
/// fresh iterate x_{k+1}.
template <class K>
AcceleratedResult<K> accelerated_method(const K& kernel, typename K::Point x0, double mu, long n_iterations,
                                        const IterationCallback<K>& on_iteration = {}) {
  if (!(mu > 0.0)) throw ConfigError("smoothing parameter mu must be positive");
  if (n_iterations < 0) throw ConfigError("iteration count must be nonnegative");
  detail::check_start(kernel, x0);

  typename K::Point x = x0;
  typename K::Point y = std::move(x0);
  double alpha = 1.0;
  for (long k = 0; k < n_iterations; ++k) {
    const SmoothEval<typename K::Point> eval = kernel.smooth_eval(y, mu);
    typename K::Point x_next = y + mu * eval.gradient;
    const double alpha_sq = alpha * alpha;
    const double alpha_next = 0.5 * (std::sqrt(alpha_sq * alpha_sq + 4.0 * alpha_sq) - alpha_sq);
    const double beta = alpha * (1.0 - alpha) / (alpha_sq + alpha_next);
    y = x_next + beta * (x_next - x);
    x = std::move(x_next);
    alpha = alpha_next;
    if (on_iteration) on_iteration(k, eval.value, x);
  }
  return {std::move(x), n_iterations};
}

// ---------------------------------------------------------------------------
// Stage loops: raise the level geometrically until the remaining headroom
// ratio (cE - opt) / (cE - val) drops to 3 or less.
// ---------------------------------------------------------------------------

template <class K>
struct SubschemeResult {
  typename K::Point y;  // feasible output with headroom ratio <= 3
  double val_y = 0.0;
  std::vector<StageRecord> stages;
  long stage_budget = 0;  // inner budget every stage ran with
  bool cap_exceeded = false;
  bool degenerate = false;  // a retraction denominator collapsed
  long total_inner() const {
    long t = 0;
    for (const auto& s : stages) t += s.inner_iterations;
    return t;
  }
};

template <class K>
SubschemeResult<K> nonsmoothed_subscheme(const K& kernel, typename K::Point u0, double diam, int outer_cap,
                                         const SchemeObserver& observer = {}) {
  if (outer_cap < 1) throw ConfigError("outer iteration cap must be positive");
  const long budget = stage_iterations_nonsmoothed(diam);

  SubschemeResult<K> out;
  out.stage_budget = budget;
  out.y = std::move(u0);
  out.val_y = kernel.objective(out.y);
  if (!(out.val_y < kernel.anchor_objective()))
    throw ConfigError("start must have objective strictly below the anchor");

  for (int stage = 0; stage < outer_cap; ++stage) {
    detail::StopWatch watch;
    auto inner_cb = observer.on_inner ? IterationCallback<K>([&, stage](long k, double v, const typename K::Point&) {
      observer.on_inner(stage, k, v);
    })
                                      : IterationCallback<K>();
    const SubgradientResult<K> run = subgradient_method(kernel, out.y, diam, budget, inner_cb);
    const StageRecord record{stage, out.val_y, run.iterations, run.best_lambda, watch.seconds()};
    out.stages.push_back(record);
    if (observer.on_stage) observer.on_stage(record);

    if (run.best_lambda <= 1.0 / 3.0) return out;  // headroom ratio is now at most 3

    try {
      out.y = kernel.boundary_projection(run.best);
    } catch (const NotProjectable&) {
      out.degenerate = true;
      return out;
    }
    out.val_y = kernel.objective(out.y);
  }
  out.cap_exceeded = true;
  return out;
}

template <class K>
SubschemeResult<K> smoothed_subscheme(const K& kernel, typename K::Point u0, double diam, int outer_cap,
                                      const SchemeObserver& observer = {}) {
  if (outer_cap < 1) throw ConfigError("outer iteration cap must be positive");
  const int n = kernel.dim();
  const long budget = stage_iterations_smoothed(diam, n);
  const double mu = stage_mu_smoothed(n);

  SubschemeResult<K> out;
  out.stage_budget = budget;
  out.y = std::move(u0);
  out.val_y = kernel.objective(out.y);
  if (!(out.val_y < kernel.anchor_objective()))
    throw ConfigError("start must have objective strictly below the anchor");
  if (std::abs(kernel.lambda_min(out.y) - 1.0 / 6.0) > 1e-9)
    throw ConfigError("smoothed stage input must have lambda_min = 1/6; use the smoothed start retraction");

  for (int stage = 0; stage < outer_cap; ++stage) {
    detail::StopWatch watch;
    auto inner_cb = observer.on_inner ? IterationCallback<K>([&, stage](long k, double v, const typename K::Point&) {
      observer.on_inner(stage, k, v);
    })
                                      : IterationCallback<K>();
    const AcceleratedResult<K> run = accelerated_method(kernel, out.y, mu, budget, inner_cb);
    const double lambda_v = kernel.lambda_min(run.final);
    const StageRecord record{stage, out.val_y, run.iterations, lambda_v, watch.seconds()};
    out.stages.push_back(record);
    if (observer.on_stage) observer.on_stage(record);

    if (lambda_v <= 1.0 / 3.0) return out;

    try {
      out.y = kernel.smoothed_start(run.final);  // lambda_min lands back on 1/6 exactly
    } catch (const NotProjectable&) {
      out.degenerate = true;
      return out;
    }
    out.val_y = kernel.objective(out.y);
  }
  out.cap_exceeded = true;
  return out;
}

// ---------------------------------------------------------------------------
// Full schemes
// ---------------------------------------------------------------------------

enum class RunStatus {
  certified,           // output carries a relative-gap certificate <= requested eps
  uncertified,         // run finished but its own bound exceeds the requested eps
  aborted_outer_cap,   // stage cap hit: diam is likely an underestimate
  aborted_degenerate,  // a projection denominator collapsed: unboundedness symptom
};

template <class K>
struct SchemeResult {
  RunStatus status = RunStatus::uncertified;
  typename K::Point z;  // boundary output
  double objective = 0.0;
  std::optional<GapCertificate> certificate;
  std::vector<StageRecord> stages;  // phase-1 stage records
  long stage_budget = 0;
  long final_iterations = 0;  // phase-2 iterations executed
  long final_budget = 0;
  double val_y = 0.0;  // level after phase 1
  double seconds = 0.0;

  long total_inner_iterations() const {
    long t = final_iterations;
    for (const auto& s : stages) t += s.inner_iterations;
    return t;
  }
};

namespace detail {
inline void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("epsilon must lie strictly inside (0,1)");
}

/// Lower bound on the optimal value certified by a completed stage loop:
/// the headroom ratio of val_y is at most 3.
inline double stage_loop_opt_lower(double c_anchor, double val_y) {
  return c_anchor - 3.0 * (c_anchor - val_y);
}

template <class K, class Result>
void finalize_certificate(const K& kernel, Result& result, double eps) {
  const double c_anchor = kernel.anchor_objective();
  const double opt_lower = stage_loop_opt_lower(c_anchor, result.val_y);
  // The gap against any lower bound on opt dominates the true relative gap.
  const double posterior = relative_gap(result.objective, opt_lower, c_anchor);
  GapCertificate cert;
  cert.val = result.objective;
  cert.opt_lower = opt_lower;
  cert.epsilon = std::min(eps, std::max(posterior, 1e-300));
  result.certificate = cert;
  result.status = RunStatus::certified;
}
}  // namespace detail

/// Stage loop plus one long subgradient run at the reached level, then the
/// boundary projection of the result. Certifies relative gap <= eps in at
/// most (9 diam^2 + 1)(1/eps^2 + log_{3/2}(headroom ratio)) subgradient
/// iterations, counting each stage's budget once per retraction.
template <class K>
SchemeResult<K> nonsmoothed_scheme(const K& kernel, double eps, double diam, int outer_cap,
                                   const SchemeObserver& observer = {},
                                   std::optional<typename K::Point> start = {}) {
  detail::check_eps(eps);
  detail::StopWatch watch;

  SchemeResult<K> result;
  typename K::Point u0 = start ? std::move(*start) : kernel.default_start(1.0);
  SubschemeResult<K> sub = nonsmoothed_subscheme(kernel, std::move(u0), diam, outer_cap, observer);
  result.stages = std::move(sub.stages);
  result.stage_budget = sub.stage_budget;
  result.val_y = sub.val_y;
  if (sub.cap_exceeded || sub.degenerate) {
    result.status = sub.cap_exceeded ? RunStatus::aborted_outer_cap : RunStatus::aborted_degenerate;
    result.z = std::move(sub.y);
    result.objective = result.val_y;
    result.seconds = watch.seconds();
    return result;
  }

  result.final_budget = final_iterations_nonsmoothed(diam, eps);
  const int final_stage = static_cast<int>(result.stages.size());
  auto inner_cb = observer.on_inner ? IterationCallback<K>([&, final_stage](long k, double v, const typename K::Point&) {
    observer.on_inner(final_stage, k, v);
  })
                                    : IterationCallback<K>();
  const SubgradientResult<K> run = subgradient_method(kernel, sub.y, diam, result.final_budget, inner_cb);
  result.final_iterations = run.iterations;

  try {
    result.z = kernel.boundary_projection(run.best);
  } catch (const NotProjectable&) {
    result.status = RunStatus::aborted_degenerate;
    result.z = std::move(sub.y);
    result.objective = result.val_y;
    result.seconds = watch.seconds();
    return result;
  }
  result.objective = kernel.objective(result.z);
  detail::finalize_certificate(kernel, result, eps);
  result.seconds = watch.seconds();
  return result;
}

/// Smoothed counterpart: accelerated-gradient stages with mu = 1/(6 ln n),
/// then one accelerated run at mu = eps/(6 ln n). Certifies relative gap
/// <= eps in at most 12 sqrt(ln n) diam (1/eps + log_{5/4}(headroom ratio))
/// accelerated iterations under the same stage accounting.
template <class K>
SchemeResult<K> smoothed_scheme(const K& kernel, double eps, double diam, int outer_cap,
                                const SchemeObserver& observer = {},
                                std::optional<typename K::Point> start = {}) {
  detail::check_eps(eps);
  const int n = kernel.dim();
  if (n < 2) throw ConfigError("smoothed scheme needs dimension n >= 2");
  detail::StopWatch watch;

  SchemeResult<K> result;
  typename K::Point u0 = start ? std::move(*start) : kernel.default_start(5.0 / 6.0);
  SubschemeResult<K> sub = smoothed_subscheme(kernel, std::move(u0), diam, outer_cap, observer);
  result.stages = std::move(sub.stages);
  result.stage_budget = sub.stage_budget;
  result.val_y = sub.val_y;
  if (sub.cap_exceeded || sub.degenerate) {
    result.status = sub.cap_exceeded ? RunStatus::aborted_outer_cap : RunStatus::aborted_degenerate;
    result.z = std::move(sub.y);
    result.objective = result.val_y;
    result.seconds = watch.seconds();
    return result;
  }

  result.final_budget = final_iterations_smoothed(diam, n, eps);
  const double mu = final_mu_smoothed(n, eps);
  const int final_stage = static_cast<int>(result.stages.size());
  auto inner_cb = observer.on_inner ? IterationCallback<K>([&, final_stage](long k, double v, const typename K::Point&) {
    observer.on_inner(final_stage, k, v);
  })
                                    : IterationCallback<K>();
  const AcceleratedResult<K> run = accelerated_method(kernel, sub.y, mu, result.final_budget, inner_cb);
  result.final_iterations = run.iterations;

  try {
    result.z = kernel.boundary_projection(run.final);
  } catch (const NotProjectable&) {
    result.status = RunStatus::aborted_degenerate;
    result.z = std::move(sub.y);
    result.objective = result.val_y;
    result.seconds = watch.seconds();
    return result;
  }
  result.objective = kernel.objective(result.z);
  detail::finalize_certificate(kernel, result, eps);
  result.seconds = watch.seconds();
  return result;
}

/// Single subgradient pass from the default start, certified a posteriori:
/// with delta = diam/sqrt(N) and lam the output's lambda_min, the projected
/// output has relative gap at most delta/(1 - lam), and the optimal value is
/// at least (val - (lam + delta) cE) / (1 - lam - delta). Without the stage
/// loop the bound can exceed the requested eps, in which case the run is
/// reported as uncertified.
template <class K>
SchemeResult<K> subgradient_only_scheme(const K& kernel, double eps, double diam, int /*outer_cap*/,
                                        const SchemeObserver& observer = {},
                                        std::optional<typename K::Point> start = {}) {
  detail::check_eps(eps);
  detail::StopWatch watch;

  SchemeResult<K> result;
  typename K::Point u0 = start ? std::move(*start) : kernel.default_start(1.0);
  const double val0 = kernel.objective(u0);
  result.val_y = val0;
  result.final_budget = final_iterations_nonsmoothed(diam, eps);
  auto inner_cb = observer.on_inner ? IterationCallback<K>([&](long k, double v, const typename K::Point&) {
    observer.on_inner(0, k, v);
  })
                                    : IterationCallback<K>();
  detail::StopWatch stage_watch;
  const SubgradientResult<K> run = subgradient_method(kernel, std::move(u0), diam, result.final_budget, inner_cb);
  result.final_iterations = run.iterations;
  const StageRecord record{0, val0, run.iterations, run.best_lambda, stage_watch.seconds()};
  result.stages.push_back(record);
  if (observer.on_stage) observer.on_stage(record);

  try {
    result.z = kernel.boundary_projection(run.best);
  } catch (const NotProjectable&) {
    result.status = RunStatus::aborted_degenerate;
    result.z = run.best;
    result.objective = kernel.objective(run.best);
    result.seconds = watch.seconds();
    return result;
  }
  result.objective = kernel.objective(result.z);

  const double c_anchor = kernel.anchor_objective();
  const double delta =
      run.zero_subgradient ? 0.0 : diam / std::sqrt(static_cast<double>(result.final_budget));
  const double lam = run.best_lambda;
  if (lam + delta < 1.0) {
    GapCertificate cert;
    cert.val = result.objective;
    cert.epsilon = std::max(delta / (1.0 - lam), 1e-300);
    cert.opt_lower = (val0 - (lam + delta) * c_anchor) / (1.0 - lam - delta);
    result.certificate = cert;
    result.status = cert.epsilon <= eps ? RunStatus::certified : RunStatus::uncertified;
  } else {
    result.status = RunStatus::uncertified;
  }
  result.seconds = watch.seconds();
  return result;
}

// ---------------------------------------------------------------------------
// Exact line search for the LP path
// ---------------------------------------------------------------------------

struct LineSearchResult {
  double t = 0.0;
  double value = 0.0;
  bool unbounded = false;  // every coordinate of d is positive
};

/// Maximizes t -> min_j (x_j + t d_j) over t >= 0 through the lower envelope
/// of the n lines; the sort dominates the cost.
inline LineSearchResult lp_exact_line_search(const VectorXd& x, const VectorXd& d) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw ConfigError("empty line search");
  if (d.size() != n) throw ConfigError("direction dimension mismatch");

  if (d.cwiseAbs().maxCoeff() == 0.0) return {0.0, x.minCoeff(), false};
  if ((d.array() > 0.0).all()) return {0.0, x.minCoeff(), true};

  // Lines (slope, intercept) sorted by slope descending, ties keeping the
  // lower intercept; duplicates of equal slope collapse to one line.
  std::vector<std::pair<double, double>> lines(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) lines[static_cast<size_t>(j)] = {d[j], x[j]};
  std::sort(lines.begin(), lines.end(),
            [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  std::vector<std::pair<double, double>> distinct;
  for (const auto& line : lines)
    if (distinct.empty() || distinct.back().first != line.first) distinct.push_back(line);

  // Monotone hull of the lower envelope; active slopes decrease with t.
  const auto cross = [](const std::pair<double, double>& a, const std::pair<double, double>& b) {
    return (a.second - b.second) / (b.first - a.first);
  };
  std::vector<std::pair<double, double>> hull;
  for (const auto& line : distinct) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], line) <= cross(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(line);
  }

  double t_star = 0.0;
  if (hull.front().first <= 0.0) {
    t_star = 0.0;  // envelope never increases to the right
  } else {
    size_t i = 0;
    while (i < hull.size() && hull[i].first > 0.0) ++i;
    // hull[i] exists because min_j d_j <= 0 here; the maximum sits where the
    // envelope's slope first drops to zero or below.
    t_star = std::max(0.0, cross(hull[i - 1], hull[i]));
  }
  return {t_star, (x + t_star * d).minCoeff(), false};
}

}  // namespace radial
