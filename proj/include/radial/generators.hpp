#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "radial/boundary.hpp"
#include "radial/validate.hpp"

namespace radial {

enum class OracleMethod { vertex_enumeration, lifted_lp, constructed_certificate };

/// Ground truth for a desk-scale instance: the optimal value and optimizer,
/// optionally the optimum of the level-val slice problem, and for
/// constructed instances the dual certificate that proves optimality.
struct OracleSolution {
  double opt_val = 0.0;
  OracleMethod method = OracleMethod::vertex_enumeration;

  VectorXd optimizer;      // LP optimizer
  MatrixXd optimizer_mat;  // SDP optimizer

  bool has_slice = false;
  double slice_val = 0.0;
  bool slice_feasible = false;  // false when val is below the optimal value
  double slice_lambda = 0.0;    // optimal lambda_min over the slice
  VectorXd slice_point;
  MatrixXd slice_point_mat;

  VectorXd dual_y;     // constructed SDP: multipliers
  MatrixXd dual_slack; // constructed SDP: S with <S, optimizer> = 0
};

// ---------------------------------------------------------------------------
// Randomness helpers (all deterministic in the seed)
// ---------------------------------------------------------------------------

inline MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) b(i, j) = b(j, i) = normal(rng);
  return b;
}

inline MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<MatrixXd> qr(g);
  MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, n);
  const MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

inline MatrixXd random_spd(int n, std::mt19937_64& rng, double eig_low = 0.5, double eig_high = 2.0) {
  std::uniform_real_distribution<double> uniform(eig_low, eig_high);
  const MatrixXd q = random_orthogonal(n, rng);
  VectorXd lam(n);
  for (int i = 0; i < n; ++i) lam[i] = uniform(rng);
  return q * lam.asDiagonal() * q.transpose();
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// One-constraint LP over the scaled simplex {x >= 0, sum x = n} with the
/// all-ones vector feasible. Costs are positive with pairwise distinct
/// entries, so the optimum sits at the vertex n e(argmin c) and the
/// projected objective never vanishes. The simplex has diameter n sqrt(2),
/// which bounds every level set; margin adds slack on top.
inline LpInstance gen_simplex_lp(int n, std::uint64_t seed, double margin = 0.002) {
  if (n < 2) throw ConfigError("simplex LP generator needs n >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.5, 3.0);
  VectorXd c(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (int j = 0; j < n; ++j) c[j] = uniform(rng);
    bool distinct = true;
    for (int i = 0; i < n && distinct; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(c[i] - c[j]) < 1e-6) {
          distinct = false;
          break;
        }
    if (distinct) break;
    if (attempt == 99) throw Error("simplex LP generator failed to draw distinct costs");
  }
  MatrixXd a = MatrixXd::Ones(1, n);
  VectorXd b = VectorXd::Constant(1, static_cast<double>(n));
  const double diam = n * std::sqrt(2.0) * (1.0 + margin);
  return LpInstance(std::move(a), std::move(b), std::move(c), diam);
}

/// Random SDP whose anchor I sits on the central path: C = mu_cp I + A*(y)
/// makes the identity the barrier optimizer at parameter mu_cp, and then
/// the projections of C and I onto the constraint nullspace are parallel.
/// Level sets live on fixed-trace slices, so diam = n is recorded.
inline SdpInstance gen_central_path_sdp(int n, int m, double mu_cp, std::uint64_t seed, int max_retries = 50) {
  if (n < 2 || m < 1) throw ConfigError("central-path generator needs n >= 2 and m >= 1");
  if (m + 1 >= n * (n + 1) / 2) throw ConfigError("too many constraints: the slice would be a point");
  if (!(mu_cp > 0.0)) throw ConfigError("central-path parameter must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<SymMatrix> a;
    a.reserve(static_cast<size_t>(m));
    VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      a.emplace_back(random_symmetric(n, rng));
      y[i] = uniform(rng);
    }
    MatrixXd c = mu_cp * MatrixXd::Identity(n, n);
    for (int i = 0; i < m; ++i) c += y[i] * a[static_cast<size_t>(i)].mat();
    SdpInstance sdp(std::move(a), VectorXd(), SymMatrix::symmetrize(c), static_cast<double>(n));
    sdp.b = sdp.apply_constraints(MatrixXd::Identity(n, n));
    if (validate(sdp).passed()) return sdp;
  }
  throw Error("central-path generator kept drawing degenerate instances");
}

/// SDP with a known optimum built from a strictly complementary primal-dual
/// pair: a rank-deficient Z* with trace n, a dual slack S* supported on its
/// kernel, and constraints containing the trace row A_1 = I with the rest
/// orthogonalized against I - Z* so the identity stays feasible. Weak
/// duality certifies opt_val = <C, Z*> exactly, and the fixed trace pins
/// every feasible point inside a ball of diameter n sqrt(2).
inline std::pair<SdpInstance, OracleSolution> sdp_constructed_oracle(int n, std::uint64_t seed,
                                                                     double margin = 0.002) {
  if (n < 2) throw ConfigError("constructed SDP generator needs n >= 2");
  if (n > 8) throw OracleTooLarge("constructed SDP oracle supports n <= 8");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.5, 1.5);
  std::uniform_real_distribution<double> uniform_sym(-1.0, 1.0);
  const int rank = n - 1;
  const int m = std::max(1, std::min(n - 1, n * (n + 1) / 2 - 2));

  for (int attempt = 0; attempt < 50; ++attempt) {
    const MatrixXd q = random_orthogonal(n, rng);
    VectorXd z = VectorXd::Zero(n);
    for (int i = 0; i < rank; ++i) z[i] = uniform(rng);
    z *= static_cast<double>(n) / z.sum();  // trace of Z* equals trace of I
    VectorXd s = VectorXd::Zero(n);
    s[n - 1] = uniform(rng);

    const MatrixXd z_star = q * z.asDiagonal() * q.transpose();
    const MatrixXd s_star = q * s.asDiagonal() * q.transpose();
    const MatrixXd w = MatrixXd::Identity(n, n) - z_star;
    const double w_dot = trace_dot(w, w);

    std::vector<SymMatrix> a;
    a.emplace_back(SymMatrix::identity(n));
    for (int i = 1; i < m; ++i) {
      const MatrixXd b = random_symmetric(n, rng);
      a.emplace_back(SymMatrix::symmetrize(b - (trace_dot(b, w) / w_dot) * w));
    }
    VectorXd y(m);
    for (int i = 0; i < m; ++i) y[i] = uniform_sym(rng);
    MatrixXd c = s_star;
    for (int i = 0; i < m; ++i) c += y[i] * a[static_cast<size_t>(i)].mat();

    const double diam = n * std::sqrt(2.0) * (1.0 + margin);
    SdpInstance sdp(std::move(a), VectorXd(), SymMatrix::symmetrize(c), diam);
    sdp.b = sdp.apply_constraints(z_star);
    if (!validate(sdp).passed()) continue;

    OracleSolution oracle;
    oracle.method = OracleMethod::constructed_certificate;
    oracle.opt_val = trace_dot(sdp.c.mat(), z_star);
    oracle.optimizer_mat = z_star;
    oracle.dual_y = y;
    oracle.dual_slack = s_star;
    return {std::move(sdp), std::move(oracle)};
  }
  throw Error("constructed SDP generator kept drawing degenerate instances");
}

/// Optimal slice point transported from a known optimizer:
///   X*_val = E + (cE - val)/(cE - opt_val) (Z* - E).
inline MatrixXd constructed_slice_optimum(const SdpInstance& sdp, const OracleSolution& oracle, double val) {
  const double c_anchor = trace_dot(sdp.c.mat(), sdp.e.mat());
  if (!(val < c_anchor)) throw ConfigError("slice level must be strictly below the anchor objective");
  const double beta = (c_anchor - val) / (c_anchor - oracle.opt_val);
  return sdp.e.mat() + beta * (oracle.optimizer_mat - sdp.e.mat());
}

// ---------------------------------------------------------------------------
// Brute-force LP oracle
// ---------------------------------------------------------------------------

namespace detail {
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& body) {
  std::vector<int> pick;
  pick.reserve(static_cast<size_t>(k));
  const std::function<void(int)> recurse = [&](int next) {
    if (static_cast<int>(pick.size()) == k) {
      body(pick);
      return;
    }
    if (n - next < k - static_cast<int>(pick.size())) return;
    for (int j = next; j < n; ++j) {
      pick.push_back(j);
      recurse(j + 1);
      pick.pop_back();
    }
  };
  recurse(0);
}
}  // namespace detail

/// Exact LP ground truth by enumerating basic feasible solutions, and, when
/// a slice level is requested, the slice optimum through the lifted program
///   maximize t  s.t.  A(s + t 1) = b, c'(s + t 1) = val, s >= 0
/// enumerated the same way with t always basic.
inline OracleSolution lp_vertex_oracle(const LpInstance& lp, std::optional<double> slice_val = {},
                                       double feas_tol = 1e-9) {
  const int n = lp.n();
  const int m = lp.m();
  if (n > 12 || m > 6) throw OracleTooLarge("vertex oracle supports n <= 12, m <= 6");

  OracleSolution oracle;
  oracle.method = OracleMethod::vertex_enumeration;
  double best = std::numeric_limits<double>::infinity();
  detail::for_each_subset(n, m, [&](const std::vector<int>& basis) {
    MatrixXd ab(m, m);
    for (int j = 0; j < m; ++j) ab.col(j) = lp.a.col(basis[static_cast<size_t>(j)]);
    const Eigen::FullPivLU<MatrixXd> lu(ab);
    if (!lu.isInvertible()) return;
    const VectorXd xb = lu.solve(lp.b);
    if ((xb.array() < -feas_tol).any()) return;
    VectorXd x = VectorXd::Zero(n);
    for (int j = 0; j < m; ++j) x[basis[static_cast<size_t>(j)]] = xb[j];
    const double value = lp.c.dot(x);
    if (value < best) {
      best = value;
      oracle.optimizer = x;
    }
  });
  if (!std::isfinite(best)) throw Error("no basic feasible solution found");
  oracle.opt_val = best;

  if (slice_val) {
    // Lifted substitution x = s + t e solves max min_j x_j/e_j on the slice.
    oracle.has_slice = true;
    oracle.slice_val = *slice_val;
    oracle.method = OracleMethod::lifted_lp;
    const VectorXd anchor_cols = lp.a * lp.e;
    const double c_anchor_dot = lp.c.dot(lp.e);
    double best_t = -std::numeric_limits<double>::infinity();
    detail::for_each_subset(n, m, [&](const std::vector<int>& basis) {
      MatrixXd mat(m + 1, m + 1);
      for (int j = 0; j < m; ++j) {
        mat.col(j).head(m) = lp.a.col(basis[static_cast<size_t>(j)]);
        mat(m, j) = lp.c[basis[static_cast<size_t>(j)]];
      }
      mat.col(m).head(m) = anchor_cols;
      mat(m, m) = c_anchor_dot;
      const Eigen::FullPivLU<MatrixXd> lu(mat);
      if (!lu.isInvertible()) return;
      VectorXd rhs(m + 1);
      rhs.head(m) = lp.b;
      rhs[m] = *slice_val;
      const VectorXd sol = lu.solve(rhs);
      if ((sol.head(m).array() < -feas_tol).any()) return;
      const double t = sol[m];
      if (t > best_t) {
        best_t = t;
        VectorXd x = t * lp.e;
        for (int j = 0; j < m; ++j) x[basis[static_cast<size_t>(j)]] += sol[j];
        oracle.slice_point = x;
      }
    });
    if (!std::isfinite(best_t)) throw Error("lifted slice enumeration found no vertex");
    oracle.slice_lambda = best_t;
    oracle.slice_feasible = best_t >= -feas_tol;
  }
  return oracle;
}

}  // namespace radial
