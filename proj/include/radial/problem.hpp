#pragma once

#include <utility>
#include <vector>

#include "radial/symmetric.hpp"

namespace radial {

/// Linear program in equality standard form:
///   minimize c'x  subject to  A x = b,  x >= 0,
/// together with a known strictly positive feasible point e and an upper
/// bound diam on the diameters of all level sets better than the one
/// through e (measured in the <.,.>_e inner product when e != 1).
struct LpInstance {
  MatrixXd a;   // m x n
  VectorXd b;   // m
  VectorXd c;   // n
  VectorXd e;   // n, strictly positive feasible point
  double diam = 0.0;

  LpInstance() = default;
  LpInstance(MatrixXd a_, VectorXd b_, VectorXd c_, double diam_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), diam(diam_) {
    e = VectorXd::Ones(a.cols());
  }
  LpInstance(MatrixXd a_, VectorXd b_, VectorXd c_, VectorXd e_, double diam_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), e(std::move(e_)), diam(diam_) {}

  int n() const { return static_cast<int>(a.cols()); }
  int m() const { return static_cast<int>(a.rows()); }
};

/// Semidefinite program in equality standard form:
///   minimize <C,X>  subject to  <A_i,X> = b_i,  X psd,
/// with a known strictly feasible E (default identity) and a level-set
/// diameter bound diam (in the <.,.>_E inner product when E != I).
struct SdpInstance {
  std::vector<SymMatrix> a;
  VectorXd b;
  SymMatrix c;
  SymMatrix e;
  double diam = 0.0;

  SdpInstance() = default;
  SdpInstance(std::vector<SymMatrix> a_, VectorXd b_, SymMatrix c_, double diam_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), diam(diam_) {
    e = SymMatrix::identity(c.n());
  }
  SdpInstance(std::vector<SymMatrix> a_, VectorXd b_, SymMatrix c_, SymMatrix e_, double diam_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), e(std::move(e_)), diam(diam_) {}

  int n() const { return c.n(); }
  int m() const { return static_cast<int>(a.size()); }

  /// The constraint map A(X) = (<A_1,X>, ..., <A_m,X>).
  VectorXd apply_constraints(const MatrixXd& x) const {
    VectorXd out(m());
    for (int i = 0; i < m(); ++i) out[i] = trace_dot(a[static_cast<size_t>(i)].mat(), x);
    return out;
  }

  /// The adjoint map y -> sum_i y_i A_i.
  MatrixXd adjoint(const VectorXd& y) const {
    MatrixXd out = MatrixXd::Zero(n(), n());
    for (int i = 0; i < m(); ++i) out += y[i] * a[static_cast<size_t>(i)].mat();
    return out;
  }
};

/// Square-root machinery reducing an E-anchored run to the identity-anchored
/// case. Carries E, E^{1/2} and E^{-1/2}; all three come from one
/// eigendecomposition of E.
class ScalingContext {
 public:
  ScalingContext() = default;

  explicit ScalingContext(const SymMatrix& e) : e_(e) {
    const EigenSym es = eigen_sym(e.mat());
    const double lo = es.values.minCoeff();
    if (lo <= 0.0) throw NotStrictlyFeasible("E is not positive definite (min eigenvalue " + std::to_string(lo) + ")");
    identity_ = max_abs(e.mat() - MatrixXd::Identity(e.n(), e.n())) == 0.0;
    const VectorXd root = es.values.cwiseSqrt();
    half_ = es.vectors * root.asDiagonal() * es.vectors.transpose();
    half_inv_ = es.vectors * root.cwiseInverse().asDiagonal() * es.vectors.transpose();
  }

  static ScalingContext identity(int n) { return ScalingContext(SymMatrix::identity(n)); }

  bool is_identity() const { return identity_; }
  int n() const { return e_.n(); }
  const SymMatrix& e() const { return e_; }
  const MatrixXd& half() const { return half_; }
  const MatrixXd& half_inv() const { return half_inv_; }

  /// X -> E^{-1/2} X E^{-1/2}
  MatrixXd to_scaled(const MatrixXd& x) const { return identity_ ? x : MatrixXd(half_inv_ * x * half_inv_); }
  /// Y -> E^{1/2} Y E^{1/2}
  MatrixXd from_scaled(const MatrixXd& y) const { return identity_ ? y : MatrixXd(half_ * y * half_); }

  /// <U,V>_E = tr(E^{-1} U E^{-1} V)
  double dot(const MatrixXd& u, const MatrixXd& v) const {
    if (identity_) return trace_dot(u, v);
    return trace_dot(to_scaled(u), to_scaled(v));
  }
  double norm(const MatrixXd& u) const { return std::sqrt(std::max(0.0, dot(u, u))); }

 private:
  SymMatrix e_;
  MatrixXd half_;
  MatrixXd half_inv_;
  bool identity_ = true;
};

/// Diagonal counterpart of ScalingContext for the nonnegative orthant.
class LpMetric {
 public:
  LpMetric() = default;
  explicit LpMetric(VectorXd e) : e_(std::move(e)) {
    if ((e_.array() <= 0.0).any()) throw NotStrictlyFeasible("e has a nonpositive coordinate");
    identity_ = (e_.array() == 1.0).all();
  }

  bool is_identity() const { return identity_; }
  const VectorXd& e() const { return e_; }

  VectorXd to_scaled(const VectorXd& x) const { return identity_ ? x : VectorXd(x.cwiseQuotient(e_)); }
  VectorXd from_scaled(const VectorXd& y) const { return identity_ ? y : VectorXd(y.cwiseProduct(e_)); }

  /// <u,v>_e = sum_j u_j v_j / e_j^2
  double dot(const VectorXd& u, const VectorXd& v) const {
    if (identity_) return u.dot(v);
    return u.cwiseQuotient(e_).dot(v.cwiseQuotient(e_));
  }
  double norm(const VectorXd& u) const { return std::sqrt(std::max(0.0, dot(u, u))); }

 private:
  VectorXd e_;
  bool identity_ = true;
};

/// Conjugates the instance data by E^{1/2} so that the returned instance has
/// E' = I. Feasible points map through Y = E^{-1/2} X E^{-1/2} with equal
/// objectives, and the <.,.>_E geometry of the original becomes the trace
/// geometry of the result, so diam carries over unchanged.
inline std::pair<SdpInstance, ScalingContext> scale_to_identity(const SdpInstance& sdp) {
  ScalingContext ctx(sdp.e);
  if (ctx.is_identity()) return {sdp, ctx};
  std::vector<SymMatrix> a;
  a.reserve(sdp.a.size());
  for (const SymMatrix& ai : sdp.a) a.emplace_back(SymMatrix::symmetrize(ctx.half() * ai.mat() * ctx.half()));
  SymMatrix c = SymMatrix::symmetrize(ctx.half() * sdp.c.mat() * ctx.half());
  SdpInstance scaled(std::move(a), sdp.b, std::move(c), sdp.diam);
  return {std::move(scaled), std::move(ctx)};
}

/// Maps a solution of the scaled instance back: X = E^{1/2} Y E^{1/2}.
inline SymMatrix unscale_solution(const SymMatrix& y, const ScalingContext& ctx) {
  return SymMatrix::symmetrize(ctx.from_scaled(y.mat()));
}

/// Diagonal specialization of scale_to_identity: columns of A and entries of
/// c are scaled by e so the returned instance has e' = 1. Solutions map back
/// through x = Delta(e) x'.
inline LpInstance lp_scale_to_ones(const LpInstance& lp) {
  LpMetric metric(lp.e);
  if (metric.is_identity()) return lp;
  LpInstance scaled(lp.a * lp.e.asDiagonal(), lp.b, lp.e.cwiseProduct(lp.c), lp.diam);
  return scaled;
}

}  // namespace radial
