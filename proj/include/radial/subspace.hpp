#pragma once

#include <utility>
#include <vector>

#include "radial/problem.hpp"

namespace radial {

/// Cholesky factorization of a small dense symmetric positive definite
/// matrix. A pivot below rel_tol times the largest diagonal entry means the
/// underlying constraint rows are dependent, which is reported as such
/// instead of being regularized away.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;

  explicit CholeskyFactor(const MatrixXd& g, double rel_tol = 1e-12) : l_(MatrixXd::Zero(g.rows(), g.cols())) {
    const int k = static_cast<int>(g.rows());
    const double floor = rel_tol * std::max(g.diagonal().maxCoeff(), 0.0);
    for (int j = 0; j < k; ++j) {
      double pivot = g(j, j) - l_.row(j).head(j).squaredNorm();
      if (pivot <= floor || !(pivot > 0.0))
        throw DependentConstraints("Gram matrix is numerically singular at row " + std::to_string(j));
      l_(j, j) = std::sqrt(pivot);
      for (int i = j + 1; i < k; ++i)
        l_(i, j) = (g(i, j) - l_.row(i).head(j).dot(l_.row(j).head(j))) / l_(j, j);
    }
  }

  VectorXd solve(VectorXd rhs) const {
    l_.triangularView<Eigen::Lower>().solveInPlace(rhs);
    l_.transpose().triangularView<Eigen::Upper>().solveInPlace(rhs);
    return rhs;
  }

  const MatrixXd& l() const { return l_; }

 private:
  MatrixXd l_;
};

/// Which affine subspace the projector targets.
enum class ProjectorMode {
  constraints_only,           // {V : A(V) = 0}
  constraints_and_objective,  // {V : A(V) = 0 and <C,V> = 0}
};

/// Orthogonal projector onto the LP constraint nullspace in the <.,.>_e
/// inner product. Holds the Cholesky factors of Abar Delta(e)^2 Abar' where
/// Abar stacks the constraint rows (and c' in augmented mode); nothing of
/// size n x n is ever formed.
class LpProjector {
 public:
  LpProjector() = default;

  LpProjector(MatrixXd rows, LpMetric metric, double pivot_rel_tol = 1e-12)
      : rows_(std::move(rows)), metric_(std::move(metric)) {
    const MatrixXd weighted = metric_.is_identity()
                                  ? rows_
                                  : MatrixXd(rows_ * metric_.e().cwiseAbs2().asDiagonal());
    gram_ = CholeskyFactor(rows_ * weighted.transpose(), pivot_rel_tol);
  }

  int n() const { return static_cast<int>(rows_.cols()); }
  const LpMetric& metric() const { return metric_; }

  /// Metric-orthogonal projection of v onto the nullspace of the rows.
  VectorXd apply(const VectorXd& v) const {
    VectorXd u = gram_.solve(rows_ * v);
    VectorXd correction = rows_.transpose() * u;
    if (!metric_.is_identity()) correction = correction.cwiseProduct(metric_.e().cwiseAbs2());
    return v - correction;
  }

  /// Index of the smallest scaled coordinate x_k/e_k (smallest index wins
  /// ties) together with the projected subgradient of x -> min_j x_j/e_j at
  /// that coordinate. Only one column of the projection matrix is formed:
  ///   u = Gram^{-1} (Abar e'(k))  ->  g = e'(k) - Delta(e)^2 Abar' u.
  std::pair<int, VectorXd> min_coordinate_column(const VectorXd& x) const {
    int k = 0;
    double best = x[0] / metric_.e()[0];
    for (int j = 1; j < n(); ++j) {
      const double v = x[j] / metric_.e()[j];
      if (v < best) {
        best = v;
        k = j;
      }
    }
    const double ek = metric_.e()[k];
    VectorXd u = gram_.solve(ek * rows_.col(k));
    VectorXd g = rows_.transpose() * (-u);
    if (!metric_.is_identity()) g = g.cwiseProduct(metric_.e().cwiseAbs2());
    g[k] += ek;
    return {k, std::move(g)};
  }

 private:
  MatrixXd rows_;
  LpMetric metric_;
  CholeskyFactor gram_;
};

/// Orthogonal projector onto {V : A(V) = 0 (and <C,V> = 0)} for the SDP
/// operator, in the trace or <.,.>_E inner product. The metric representer
/// of the functional V -> <A_i,V> is E A_i E, so projection subtracts a
/// Gram-solved combination of those representers; the Gram matrix
/// G_ij = <A_i, E A_j E> is formed once.
class SdpProjector {
 public:
  SdpProjector() = default;

  SdpProjector(const std::vector<SymMatrix>& a, const SymMatrix* c, const ScalingContext& ctx,
               double pivot_rel_tol = 1e-12)
      : ctx_(ctx) {
    for (const SymMatrix& ai : a) functionals_.push_back(ai.mat());
    if (c != nullptr) functionals_.push_back(c->mat());
    const size_t k = functionals_.size();
    representers_.reserve(k);
    for (const MatrixXd& f : functionals_)
      representers_.push_back(ctx_.is_identity() ? f : MatrixXd(ctx_.e().mat() * f * ctx_.e().mat()));
    MatrixXd gram(k, k);
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = trace_dot(functionals_[i], representers_[j]);
    gram_ = CholeskyFactor(gram, pivot_rel_tol);
  }

  const ScalingContext& scaling() const { return ctx_; }

  MatrixXd apply(const MatrixXd& v) const {
    const size_t k = functionals_.size();
    VectorXd rhs(k);
    for (size_t i = 0; i < k; ++i) rhs[i] = trace_dot(functionals_[i], v);
    const VectorXd alpha = gram_.solve(rhs);
    MatrixXd out = v;
    for (size_t i = 0; i < k; ++i) out -= alpha[i] * representers_[i];
    return out;
  }

 private:
  std::vector<MatrixXd> functionals_;
  std::vector<MatrixXd> representers_;
  ScalingContext ctx_;
  CholeskyFactor gram_;
};

inline LpProjector build_projector(const LpInstance& lp, ProjectorMode mode, double pivot_rel_tol = 1e-12) {
  MatrixXd rows;
  if (mode == ProjectorMode::constraints_and_objective) {
    rows.resize(lp.m() + 1, lp.n());
    rows.topRows(lp.m()) = lp.a;
    rows.row(lp.m()) = lp.c.transpose();
  } else {
    rows = lp.a;
  }
  return LpProjector(std::move(rows), LpMetric(lp.e), pivot_rel_tol);
}

inline SdpProjector build_projector(const SdpInstance& sdp, ProjectorMode mode, double pivot_rel_tol = 1e-12) {
  ScalingContext ctx(sdp.e);
  const SymMatrix* c = mode == ProjectorMode::constraints_and_objective ? &sdp.c : nullptr;
  return SdpProjector(sdp.a, c, ctx, pivot_rel_tol);
}

/// Projected subgradient column for the LP fast path. Throws when the column
/// lies entirely in the row space and cannot serve as a direction.
inline std::pair<int, VectorXd> lp_subgradient_column(const VectorXd& x, const LpProjector& projector) {
  auto [k, g] = projector.min_coordinate_column(x);
  if (projector.metric().norm(g) <= 1e-12)
    throw ZeroSubgradient("projected subgradient column " + std::to_string(k) + " vanishes");
  return {k, std::move(g)};
}

/// Metric projection of the objective onto {V : A(V) = 0}; the direction the
/// default starting points move along. Throws ObjectiveOrthogonal when the
/// projection vanishes, i.e. all feasible points share one objective value.
inline VectorXd pi_of_c(const LpInstance& lp, double pivot_rel_tol = 1e-12) {
  LpProjector proj = build_projector(lp, ProjectorMode::constraints_only, pivot_rel_tol);
  const VectorXd representer = proj.metric().is_identity()
                                   ? lp.c
                                   : VectorXd(lp.c.cwiseProduct(lp.e.cwiseAbs2()));
  VectorXd pi = proj.apply(representer);
  if (proj.metric().norm(pi) <= 1e-12 * std::max(proj.metric().norm(representer), 1e-300))
    throw ObjectiveOrthogonal("objective is orthogonal to the constraint nullspace");
  return pi;
}

inline SymMatrix pi_of_c(const SdpInstance& sdp, double pivot_rel_tol = 1e-12) {
  SdpProjector proj = build_projector(sdp, ProjectorMode::constraints_only, pivot_rel_tol);
  const ScalingContext& ctx = proj.scaling();
  const MatrixXd representer =
      ctx.is_identity() ? sdp.c.mat() : MatrixXd(ctx.e().mat() * sdp.c.mat() * ctx.e().mat());
  MatrixXd pi = proj.apply(representer);
  if (ctx.norm(pi) <= 1e-12 * std::max(ctx.norm(representer), 1e-300))
    throw ObjectiveOrthogonal("objective is orthogonal to the constraint nullspace");
  return SymMatrix::symmetrize(pi);
}

}  // namespace radial
