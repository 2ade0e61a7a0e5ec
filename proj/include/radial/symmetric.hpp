#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "radial/errors.hpp"

namespace radial {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Dense real symmetric matrix. Symmetry is exact by construction: the lower
/// triangle is the storage of record and is mirrored into the upper triangle.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Builds from an arbitrary square matrix, keeping only the lower triangle.
  explicit SymMatrix(const MatrixXd& m) : m_(m) {
    if (m_.rows() != m_.cols()) throw ConfigError("SymMatrix requires a square matrix");
    m_.triangularView<Eigen::StrictlyUpper>() = m_.transpose().triangularView<Eigen::StrictlyUpper>();
  }

  static SymMatrix identity(int n) { return SymMatrix(MatrixXd::Identity(n, n)); }
  static SymMatrix zero(int n) { return SymMatrix(MatrixXd::Zero(n, n)); }

  /// Averages m with its transpose first; use for matrices that are symmetric
  /// only up to roundoff.
  static SymMatrix symmetrize(const MatrixXd& m) { return SymMatrix(MatrixXd(0.5 * (m + m.transpose()))); }

  int n() const { return static_cast<int>(m_.rows()); }
  const MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  MatrixXd m_;
};

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
struct EigenSym {
  VectorXd values;
  MatrixXd vectors;  // columns are orthonormal eigenvectors

  MatrixXd reconstruct() const { return vectors * values.asDiagonal() * vectors.transpose(); }
};

/// Deterministic sign convention: the first component of each eigenvector
/// whose magnitude is non-negligible is made positive.
inline void fix_eigenvector_signs(MatrixXd& q) {
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    const double scale = q.col(c).cwiseAbs().maxCoeff();
    if (scale == 0.0) continue;
    for (Eigen::Index r = 0; r < q.rows(); ++r) {
      const double v = q(r, c);
      if (std::abs(v) > 1e-12 * scale) {
        if (v < 0.0) q.col(c) = -q.col(c);
        break;
      }
    }
  }
}

/// Full symmetric eigendecomposition (reads the lower triangle only).
inline EigenSym eigen_sym(const MatrixXd& x) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(x);
  if (solver.info() != Eigen::Success) throw Error("symmetric eigendecomposition failed");
  EigenSym out{solver.eigenvalues(), solver.eigenvectors()};
  fix_eigenvector_signs(out.vectors);
  return out;
}

inline double max_abs(const MatrixXd& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

inline double trace_dot(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

}  // namespace radial
