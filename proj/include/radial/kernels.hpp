#pragma once

#include <utility>

#include "radial/boundary.hpp"
#include "radial/smoothing.hpp"
#include "radial/subspace.hpp"
#include "radial/validate.hpp"

namespace radial {

/// Value and metric gradient of the smoothed objective at one point; both
/// come from a single factorization of the point.
template <class PointT>
struct SmoothEval {
  double value;
  PointT gradient;  // already projected onto the feasible subspace
};

/// Checked level of the slice problem
///   maximize lambda_min(X)  s.t.  A(X) = b, <C,X> = val,
/// which is equivalent to the original program once val < <C,E>.
template <class Kernel>
struct EquivalentProblem {
  const Kernel* kernel;
  double val;

  EquivalentProblem(const Kernel& k, double v) : kernel(&k), val(v) {
    if (!(v < k.anchor_objective()))
      throw ConfigError("slice level must be strictly below the anchor objective value");
  }

  double residual(const typename Kernel::Point& x) const {
    return std::max(kernel->constraint_residual(x),
                    std::abs(kernel->objective(x) - val) / std::max(1.0, std::abs(val)));
  }
};

/// Vector-path view of an LP. All eigenvalue language degenerates to
/// coordinates: lambda_min is min_j x_j/e_j, subgradients are projected
/// basis columns, the smoothed objective is a coordinate soft-min.
class LpKernel {
 public:
  using Point = VectorXd;

  explicit LpKernel(LpInstance lp, double tol = 1e-9) : lp_(std::move(lp)) {
    const ValidationReport report = validate(lp_, tol);
    if (!report.passed()) throw InvalidInstance("LP instance failed validation: " + report.first_failure());
    metric_ = LpMetric(lp_.e);
    augmented_ = build_projector(lp_, ProjectorMode::constraints_and_objective);
    pi_ = pi_of_c(lp_);
    lambda_max_pi_ = radial::lambda_max(pi_, metric_);
    anchor_objective_ = lp_.c.dot(lp_.e);
  }

  int dim() const { return lp_.n(); }
  const LpInstance& instance() const { return lp_; }
  const LpMetric& metric() const { return metric_; }
  const LpProjector& projector() const { return augmented_; }

  const Point& anchor() const { return lp_.e; }
  double anchor_objective() const { return anchor_objective_; }
  double objective(const Point& x) const { return lp_.c.dot(x); }

  double dot(const Point& u, const Point& v) const { return metric_.dot(u, v); }
  double norm(const Point& u) const { return metric_.norm(u); }

  double lambda_min(const Point& x) const { return radial::lambda_min(x, metric_); }

  Point project(const Point& v) const { return augmented_.apply(v); }

  /// lambda_min at x together with a projected subgradient of it, via the
  /// single-column fast path: only one column of the projection matrix is
  /// ever formed.
  std::pair<double, Point> lambda_and_subgradient(const Point& x) const {
    auto [k, g] = augmented_.min_coordinate_column(x);
    return {x[k] / metric_.e()[k], std::move(g)};
  }

  double smooth_value(const Point& x, double mu) const {
    return soft_min_from_eigenvalues(metric_.to_scaled(x), mu);
  }

  SmoothEval<Point> smooth_eval(const Point& x, double mu) const {
    const VectorXd scaled = metric_.to_scaled(x);
    const VectorXd w = soft_min_weights(scaled, mu);
    const Point representer = metric_.is_identity() ? w : Point(w.cwiseProduct(metric_.e()));
    return {soft_min_from_eigenvalues(scaled, mu), augmented_.apply(representer)};
  }

  Point boundary_projection(const Point& x) const { return radial::boundary_projection(x, metric_); }

  const Point& pi_objective() const { return pi_; }
  double lambda_max_pi() const { return lambda_max_pi_; }

  /// Anchor moved against the projected objective until lambda_min drops to
  /// 1 - factor; with factor = 1 this is the boundary point the schemes
  /// start from by default.
  Point default_start(double factor) const {
    if (lambda_max_pi_ <= 0.0)
      throw UnboundedCertificate("moving against the projected objective never exits the cone");
    return lp_.e - (factor / lambda_max_pi_) * pi_;
  }

  /// Retraction onto {lambda_min = 1/6} used by the smoothed scheme:
  /// e + (5/6) (u - e) / (1 - lambda_min(u)).
  Point smoothed_start(const Point& u) const {
    const double scale = (5.0 / 6.0) * detail::projection_scale(lambda_min(u));
    return lp_.e + scale * (u - lp_.e);
  }

  double constraint_residual(const Point& x) const {
    return (lp_.a * x - lp_.b).norm() / std::max(1.0, lp_.b.norm());
  }

 private:
  LpInstance lp_;
  LpMetric metric_;
  LpProjector augmented_;
  Point pi_;
  double lambda_max_pi_ = 0.0;
  double anchor_objective_ = 0.0;
};

/// Matrix-path view of an SDP, in the trace inner product when E = I and in
/// <.,.>_E otherwise. Every eigenvalue quantity is computed from
/// E^{-1/2} X E^{-1/2} through the scaling context; points stay in the
/// original coordinates throughout, so outputs need no post-processing.
class SdpKernel {
 public:
  using Point = MatrixXd;

  explicit SdpKernel(SdpInstance sdp, double tol = 1e-9) : sdp_(std::move(sdp)) {
    const ValidationReport report = validate(sdp_, tol);
    if (!report.passed()) throw InvalidInstance("SDP instance failed validation: " + report.first_failure());
    ctx_ = ScalingContext(sdp_.e);
    augmented_ = SdpProjector(sdp_.a, &sdp_.c, ctx_);
    pi_ = pi_of_c(sdp_).mat();
    lambda_max_pi_ = radial::lambda_max(pi_, ctx_);
    anchor_objective_ = trace_dot(sdp_.c.mat(), sdp_.e.mat());
  }

  int dim() const { return sdp_.n(); }
  const SdpInstance& instance() const { return sdp_; }
  const ScalingContext& scaling() const { return ctx_; }
  const SdpProjector& projector() const { return augmented_; }

  const Point& anchor() const { return sdp_.e.mat(); }
  double anchor_objective() const { return anchor_objective_; }
  double objective(const Point& x) const { return trace_dot(sdp_.c.mat(), x); }

  double dot(const Point& u, const Point& v) const { return ctx_.dot(u, v); }
  double norm(const Point& u) const { return ctx_.norm(u); }

  double lambda_min(const Point& x) const { return radial::lambda_min(x, ctx_); }

  Point project(const Point& v) const { return augmented_.apply(v); }

  /// One eigendecomposition yields both lambda_min and its projected
  /// subgradient. At an eigenvalue of multiplicity above one the
  /// deterministic eigensolver's first column is used.
  std::pair<double, Point> lambda_and_subgradient(const Point& x) const {
    const EigenSym es = eigen_sym(ctx_.to_scaled(x));
    const VectorXd q = es.vectors.col(0);
    const MatrixXd representer = ctx_.from_scaled(q * q.transpose());
    return {es.values[0], augmented_.apply(representer)};
  }

  double smooth_value(const Point& x, double mu) const {
    return soft_min_from_eigenvalues(eigen_sym(ctx_.to_scaled(x)).values, mu);
  }

  SmoothEval<Point> smooth_eval(const Point& x, double mu) const {
    const EigenSym es = eigen_sym(ctx_.to_scaled(x));
    const VectorXd w = soft_min_weights(es.values, mu);
    const MatrixXd representer = ctx_.from_scaled(es.vectors * w.asDiagonal() * es.vectors.transpose());
    return {soft_min_from_eigenvalues(es.values, mu), augmented_.apply(representer)};
  }

  Point boundary_projection(const Point& x) const { return radial::boundary_projection(x, ctx_).mat(); }

  const Point& pi_objective() const { return pi_; }
  double lambda_max_pi() const { return lambda_max_pi_; }

  Point default_start(double factor) const {
    if (lambda_max_pi_ <= 0.0)
      throw UnboundedCertificate("moving against the projected objective never exits the cone");
    return sdp_.e.mat() - (factor / lambda_max_pi_) * pi_;
  }

  Point smoothed_start(const Point& u) const {
    const double scale = (5.0 / 6.0) * detail::projection_scale(lambda_min(u));
    return sdp_.e.mat() + scale * (u - sdp_.e.mat());
  }

  double constraint_residual(const Point& x) const {
    return (sdp_.apply_constraints(x) - sdp_.b).norm() / std::max(1.0, sdp_.b.norm());
  }

 private:
  SdpInstance sdp_;
  ScalingContext ctx_;
  SdpProjector augmented_;
  Point pi_;
  double lambda_max_pi_ = 0.0;
  double anchor_objective_ = 0.0;
};

}  // namespace radial
