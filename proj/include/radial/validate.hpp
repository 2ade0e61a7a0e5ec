#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "radial/subspace.hpp"

namespace radial {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;  // residual or witness value, check-specific
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
      os << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << " (measured " << c.measured << ")\n";
    }
    return os.str();
  }

  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
    return "";
  }
};

namespace detail {
inline double relative_residual(const VectorXd& lhs, const VectorXd& rhs) {
  const double scale = std::max(1.0, rhs.norm());
  return (lhs - rhs).norm() / scale;
}
}  // namespace detail

/// Checks the standing assumptions behind every solver run: a strictly
/// interior anchor on the constraint set, independent constraint rows, an
/// objective that actually varies over the feasible set, and a positive
/// level-set diameter bound. Solvers refuse instances whose report fails.
inline ValidationReport validate(const LpInstance& lp, double tol = 1e-9) {
  ValidationReport report;

  const bool shapes_ok = lp.b.size() == lp.m() && lp.c.size() == lp.n() && lp.e.size() == lp.n() && lp.n() > 0;
  report.checks.push_back({"shapes consistent", shapes_ok, static_cast<double>(lp.n()),
                           shapes_ok ? "" : "A, b, c, e dimensions disagree"});
  if (!shapes_ok) return report;

  const double min_e = lp.e.minCoeff();
  report.checks.push_back({"e strictly positive", min_e > 0.0, min_e,
                           min_e > 0.0 ? "" : "e not strictly positive"});

  const double feas = detail::relative_residual(lp.a * lp.e, lp.b);
  report.checks.push_back({"A e = b", feas <= tol, feas, feas <= tol ? "" : "anchor violates the equations"});

  bool independent = false;
  std::string dep_detail;
  if (min_e > 0.0) {
    try {
      build_projector(lp, ProjectorMode::constraints_and_objective);
      independent = true;
    } catch (const DependentConstraints& err) {
      dep_detail = err.what();
    }
  } else {
    dep_detail = "skipped: e not strictly positive";
  }
  report.checks.push_back({"rows of [A; c'] independent", independent, independent ? 1.0 : 0.0, dep_detail});

  bool objective_ok = false;
  double pi_norm = 0.0;
  std::string pi_detail;
  if (independent) {
    try {
      const VectorXd pi = pi_of_c(lp);
      pi_norm = LpMetric(lp.e).norm(pi);
      objective_ok = true;
    } catch (const ObjectiveOrthogonal& err) {
      pi_detail = "C orthogonal to nullspace / dependent";
    } catch (const DependentConstraints& err) {
      pi_detail = err.what();
    }
  } else {
    pi_detail = "skipped: dependent rows";
  }
  report.checks.push_back({"objective not orthogonal to nullspace", objective_ok, pi_norm, pi_detail});

  report.checks.push_back({"diam positive", lp.diam > 0.0, lp.diam, lp.diam > 0.0 ? "" : "diam must be > 0"});
  return report;
}

inline ValidationReport validate(const SdpInstance& sdp, double tol = 1e-9) {
  ValidationReport report;

  bool shapes_ok = sdp.n() > 0 && sdp.b.size() == sdp.m() && sdp.e.n() == sdp.n();
  for (const SymMatrix& ai : sdp.a) shapes_ok = shapes_ok && ai.n() == sdp.n();
  report.checks.push_back({"shapes consistent", shapes_ok, static_cast<double>(sdp.n()),
                           shapes_ok ? "" : "A_i, C, E dimensions disagree"});
  if (!shapes_ok) return report;

  double min_eig = 0.0;
  bool pd = false;
  try {
    min_eig = eigen_sym(sdp.e.mat()).values.minCoeff();
    pd = min_eig > 0.0;
  } catch (const Error&) {
  }
  report.checks.push_back({"E positive definite", pd, min_eig, pd ? "" : "E is not strictly feasible"});

  const double feas = detail::relative_residual(sdp.apply_constraints(sdp.e.mat()), sdp.b);
  report.checks.push_back({"A(E) = b", feas <= tol, feas, feas <= tol ? "" : "anchor violates the equations"});

  bool independent = false;
  std::string dep_detail;
  if (pd) {
    try {
      build_projector(sdp, ProjectorMode::constraints_and_objective);
      independent = true;
    } catch (const DependentConstraints& err) {
      dep_detail = err.what();
    }
  } else {
    dep_detail = "skipped: E not positive definite";
  }
  report.checks.push_back({"{A_i, C} linearly independent", independent, independent ? 1.0 : 0.0, dep_detail});

  bool objective_ok = false;
  double pi_norm = 0.0;
  std::string pi_detail;
  if (independent) {
    try {
      const SymMatrix pi = pi_of_c(sdp);
      pi_norm = ScalingContext(sdp.e).norm(pi.mat());
      objective_ok = true;
    } catch (const ObjectiveOrthogonal&) {
      pi_detail = "C orthogonal to nullspace / dependent";
    } catch (const Error& err) {
      pi_detail = err.what();
    }
  } else {
    pi_detail = "skipped: dependent operator";
  }
  report.checks.push_back({"objective not orthogonal to nullspace", objective_ok, pi_norm, pi_detail});

  report.checks.push_back({"diam positive", sdp.diam > 0.0, sdp.diam, sdp.diam > 0.0 ? "" : "diam must be > 0"});
  return report;
}

}  // namespace radial
