#pragma once

#include <random>

#include "radial/radial.hpp"

namespace testsupport {

using namespace radial;

inline VectorXd vec(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

/// min c'x s.t. sum x = 3, x >= 0 with c = (1,2,3): optimum 3 at (3,0,0),
/// objective at the all-ones anchor is 6. The simplex bound 3 sqrt(2) is
/// rounded up to 4.25.
inline LpInstance canonical_lp() {
  return LpInstance(MatrixXd::Ones(1, 3), vec({3.0}), vec({1.0, 2.0, 3.0}), 4.25);
}

/// min <diag(1,2), X> s.t. tr X = 2, X psd: optimum 2 at diag(2,0), anchor
/// objective 3. Level sets live on tr X = 2, diameter at most 2 sqrt(2).
inline SdpInstance canonical_sdp() {
  std::vector<SymMatrix> a;
  a.emplace_back(SymMatrix::identity(2));
  MatrixXd c(2, 2);
  c << 1.0, 0.0, 0.0, 2.0;
  return SdpInstance(std::move(a), vec({2.0}), SymMatrix(c), 3.0);
}

/// Random point on the slice through base: base plus projected random
/// directions, which preserves A(x) = b and <c,x> = <c,base>.
inline VectorXd random_slice_point(const LpKernel& kernel, const VectorXd& base, std::mt19937_64& rng,
                                   double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorXd dir(base.size());
  for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = normal(rng);
  return base + scale * kernel.project(dir);
}

inline MatrixXd random_slice_point(const SdpKernel& kernel, const MatrixXd& base, std::mt19937_64& rng,
                                   double scale = 1.0) {
  return base + scale * kernel.project(random_symmetric(kernel.dim(), rng));
}

}  // namespace testsupport
