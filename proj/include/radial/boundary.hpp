#pragma once

#include "radial/problem.hpp"

namespace radial {

// Denominators 1 - lambda below this are treated as "the ray never exits the
// cone" rather than producing enormous projections.
inline constexpr double kProjectionDenominatorFloor = 1e-12;

/// Minimum eigenvalue of a symmetric matrix.
inline double lambda_min(const MatrixXd& x) { return eigen_sym(x).values.minCoeff(); }

/// Coordinate minimum: the vector specialization of the minimum eigenvalue.
inline double lambda_min(const VectorXd& x) { return x.minCoeff(); }

/// lambda_min relative to the anchor E: the minimum eigenvalue of
/// E^{-1/2} X E^{-1/2}, computed through the scaling context rather than a
/// generalized eigenproblem.
inline double lambda_min(const MatrixXd& x, const ScalingContext& ctx) {
  return lambda_min(ctx.is_identity() ? x : MatrixXd(ctx.to_scaled(x)));
}

/// min_j x_j / e_j
inline double lambda_min(const VectorXd& x, const LpMetric& metric) {
  return metric.is_identity() ? x.minCoeff() : x.cwiseQuotient(metric.e()).minCoeff();
}

inline double lambda_max(const MatrixXd& x) { return eigen_sym(x).values.maxCoeff(); }
inline double lambda_max(const VectorXd& x) { return x.maxCoeff(); }
inline double lambda_max(const MatrixXd& x, const ScalingContext& ctx) {
  return lambda_max(ctx.is_identity() ? x : MatrixXd(ctx.to_scaled(x)));
}
inline double lambda_max(const VectorXd& x, const LpMetric& metric) {
  return metric.is_identity() ? x.maxCoeff() : x.cwiseQuotient(metric.e()).maxCoeff();
}

namespace detail {
inline double projection_scale(double lam) {
  const double denom = 1.0 - lam;
  if (denom < kProjectionDenominatorFloor)
    throw NotProjectable("lambda_min = " + std::to_string(lam) + "; the ray from the anchor never exits the cone");
  return 1.0 / denom;
}
}  // namespace detail

/// Projection of X from the anchor E to the boundary of the cone:
///   Z(X) = E + (X - E) / (1 - lambda_min_E(X)).
/// The result satisfies lambda_min_E(Z) = 0 and the same linear equations
/// as X. Requires lambda_min_E(X) < 1.
inline SymMatrix boundary_projection(const MatrixXd& x, const ScalingContext& ctx) {
  const double scale = detail::projection_scale(lambda_min(x, ctx));
  return SymMatrix::symmetrize(ctx.e().mat() + scale * (x - ctx.e().mat()));
}

inline VectorXd boundary_projection(const VectorXd& x, const LpMetric& metric) {
  const double scale = detail::projection_scale(lambda_min(x, metric));
  return metric.e() + scale * (x - metric.e());
}

/// Objective value of the boundary projection, expressed through the level
/// val = <C,X> and lam = lambda_min(X):
///   <C, Z(X)> = cE + (val - cE) / (1 - lam),
/// a strictly decreasing function of lam.
inline double projected_objective(double val, double lam, double c_anchor) {
  return c_anchor + (val - c_anchor) * detail::projection_scale(lam);
}

/// lambda_min of the optimal solution of the level-val slice problem:
///   (val - opt_val) / (cE - opt_val), a value in [0,1) for opt_val <= val < cE.
inline double optimal_slice_lambda(double val, double opt_val, double c_anchor) {
  if (!(val < c_anchor)) throw ConfigError("slice level must be strictly below the anchor objective");
  return (val - opt_val) / (c_anchor - opt_val);
}

/// Accuracy required of the slice problem so that the boundary projection of
/// the computed point reaches relative gap eps:
///   eps' = eps/(1-eps) * (cE - val)/(cE - opt_val).
inline double accuracy_threshold(double eps, double val, double opt_val, double c_anchor) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ConfigError("accuracy threshold needs 0 <= eps < 1");
  if (!(val < c_anchor)) throw ConfigError("slice level must be strictly below the anchor objective");
  return eps / (1.0 - eps) * (c_anchor - val) / (c_anchor - opt_val);
}

/// Relative improvement measure (z_obj - opt_val) / (cE - opt_val).
inline double relative_gap(double z_obj, double opt_val, double c_anchor) {
  return (z_obj - opt_val) / (c_anchor - opt_val);
}

/// Certified accuracy of a run: epsilon bounds the relative gap of the
/// output; opt_lower is the lower bound on the optimal value the scheme's
/// own guarantee produced (no external bound is ever consumed).
struct GapCertificate {
  double epsilon = 1.0;
  double val = 0.0;
  double opt_lower = 0.0;
};

}  // namespace radial
