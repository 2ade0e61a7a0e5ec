#pragma once

#include "radial/symmetric.hpp"

namespace radial {

namespace detail {
inline void require_positive_mu(double mu) {
  if (!(mu > 0.0)) throw ConfigError("smoothing parameter mu must be positive");
}
}  // namespace detail

/// Soft minimum of a set of eigenvalues: -mu ln sum_j exp(-lambda_j/mu),
/// evaluated with the minimum shifted out so no exponential overflows.
inline double soft_min_from_eigenvalues(const VectorXd& lambdas, double mu) {
  detail::require_positive_mu(mu);
  const double lo = lambdas.minCoeff();
  const double sum = ((lo - lambdas.array()) / mu).exp().sum();  // every term in (0, 1]
  return lo - mu * std::log(sum);
}

/// Softmax weights on -lambda_j/mu; positive, summing to one, concentrated
/// on the smallest eigenvalues as mu -> 0.
inline VectorXd soft_min_weights(const VectorXd& lambdas, double mu) {
  detail::require_positive_mu(mu);
  const double lo = lambdas.minCoeff();
  VectorXd w = ((lo - lambdas.array()) / mu).exp();
  return w / w.sum();
}

/// Spectral soft minimum f_mu(X) = -mu ln sum_j exp(-lambda_j(X)/mu).
/// Satisfies lambda_min(X) - mu ln n <= f_mu(X) <= lambda_min(X).
inline double soft_min_value(const MatrixXd& x, double mu) {
  return soft_min_from_eigenvalues(eigen_sym(x).values, mu);
}

/// Coordinate specialization: f_mu(x) = -mu ln sum_j exp(-x_j/mu).
inline double soft_min_value(const VectorXd& x, double mu) { return soft_min_from_eigenvalues(x, mu); }

/// Gradient of the spectral soft minimum: Q diag(w) Q' for the softmax
/// weights w on the eigenvalues. Positive semidefinite with unit trace.
inline SymMatrix soft_min_gradient(const MatrixXd& x, double mu) {
  const EigenSym es = eigen_sym(x);
  const VectorXd w = soft_min_weights(es.values, mu);
  return SymMatrix::symmetrize(es.vectors * w.asDiagonal() * es.vectors.transpose());
}

/// Coordinate gradient: the softmax weights themselves. No
/// eigendecomposition is involved on this path.
inline VectorXd soft_min_gradient(const VectorXd& x, double mu) { return soft_min_weights(x, mu); }

/// The gradient of f_mu is Lipschitz with constant 1/mu (Frobenius norm);
/// this is the constant the accelerated method's step size consumes.
inline double lipschitz_constant(double mu) {
  detail::require_positive_mu(mu);
  return 1.0 / mu;
}

}  // namespace radial
