#pragma once

#include <cstdint>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include "radial/io.hpp"
#include "radial/solvers.hpp"

namespace radial {

enum class SchemeChoice { nonsmoothed, smoothed, subgradient_only };

inline std::string to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::nonsmoothed: return "nonsmoothed";
    case SchemeChoice::smoothed: return "smoothed";
    case SchemeChoice::subgradient_only: return "subgradient-only";
  }
  return "?";
}

inline SchemeChoice scheme_from_string(const std::string& s) {
  if (s == "nonsmoothed") return SchemeChoice::nonsmoothed;
  if (s == "smoothed") return SchemeChoice::smoothed;
  if (s == "subgradient-only") return SchemeChoice::subgradient_only;
  throw ConfigError("unknown scheme \"" + s + "\" (expected nonsmoothed, smoothed, or subgradient-only)");
}

inline std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::certified: return "certified";
    case RunStatus::uncertified: return "uncertified";
    case RunStatus::aborted_outer_cap: return "aborted-outer-cap";
    case RunStatus::aborted_degenerate: return "aborted-degenerate";
  }
  return "?";
}

struct SchemeConfig {
  SchemeChoice scheme = SchemeChoice::nonsmoothed;
  double epsilon = 0.25;
  std::optional<double> diam_override;
  int outer_cap = default_outer_cap();
  long trace_stride = 0;  // 0: stage records only
  std::uint64_t seed = 0;
  double tolerance = 1e-9;

  void check() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie strictly inside (0,1)");
    if (outer_cap < 1) throw ConfigError("outer cap must be positive");
    if (trace_stride < 0) throw ConfigError("trace stride must be nonnegative");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (diam_override && !(*diam_override > 0.0)) throw ConfigError("diam must be positive");
  }
};

struct RunReport {
  std::string scheme;
  RunStatus status = RunStatus::uncertified;
  double objective = 0.0;
  double c_anchor = 0.0;
  double epsilon_requested = 0.0;
  std::optional<GapCertificate> certificate;
  int outer_stages = 0;
  long inner_iterations_total = 0;
  long stage_budget = 0;
  long final_budget = 0;
  long final_iterations = 0;
  double val_y = 0.0;
  std::vector<StageRecord> stages;
  bool is_sdp = false;
  VectorXd solution_vec;
  MatrixXd solution_mat;
  std::uint64_t seed = 0;
  std::string input_hash;
  std::string timestamp;
  double seconds = 0.0;

  int exit_code() const { return status == RunStatus::certified ? 0 : 2; }
};

namespace detail {
inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", &tm);
  return buf;
}

template <class K>
SchemeResult<K> dispatch_scheme(const K& kernel, SchemeChoice choice, double eps, double diam, int outer_cap,
                                const SchemeObserver& observer) {
  switch (choice) {
    case SchemeChoice::nonsmoothed: return nonsmoothed_scheme(kernel, eps, diam, outer_cap, observer);
    case SchemeChoice::smoothed: return smoothed_scheme(kernel, eps, diam, outer_cap, observer);
    case SchemeChoice::subgradient_only: return subgradient_only_scheme(kernel, eps, diam, outer_cap, observer);
  }
  throw ConfigError("unknown scheme");
}

template <class K>
RunReport report_from_result(const K& kernel, SchemeResult<K>& result, const SchemeConfig& config,
                             std::string input_hash) {
  RunReport report;
  report.scheme = to_string(config.scheme);
  report.status = result.status;
  report.objective = result.objective;
  report.c_anchor = kernel.anchor_objective();
  report.epsilon_requested = config.epsilon;
  report.certificate = result.certificate;
  report.outer_stages = static_cast<int>(result.stages.size());
  report.inner_iterations_total = result.total_inner_iterations();
  report.stage_budget = result.stage_budget;
  report.final_budget = result.final_budget;
  report.final_iterations = result.final_iterations;
  report.val_y = result.val_y;
  report.stages = std::move(result.stages);
  report.seed = config.seed;
  report.input_hash = std::move(input_hash);
  report.timestamp = utc_timestamp();
  report.seconds = result.seconds;
  return report;
}
}  // namespace detail

inline RunReport run(const LpInstance& lp, const SchemeConfig& config, const SchemeObserver& observer = {},
                     std::string input_hash = "") {
  config.check();
  LpInstance instance = lp;
  if (config.diam_override) instance.diam = *config.diam_override;
  LpKernel kernel(std::move(instance), config.tolerance);
  auto result =
      detail::dispatch_scheme(kernel, config.scheme, config.epsilon, kernel.instance().diam, config.outer_cap, observer);
  RunReport report = detail::report_from_result(kernel, result, config, std::move(input_hash));
  report.is_sdp = false;
  report.solution_vec = std::move(result.z);
  return report;
}

inline RunReport run(const SdpInstance& sdp, const SchemeConfig& config, const SchemeObserver& observer = {},
                     std::string input_hash = "") {
  config.check();
  SdpInstance instance = sdp;
  if (config.diam_override) instance.diam = *config.diam_override;
  SdpKernel kernel(std::move(instance), config.tolerance);
  auto result =
      detail::dispatch_scheme(kernel, config.scheme, config.epsilon, kernel.instance().diam, config.outer_cap, observer);
  RunReport report = detail::report_from_result(kernel, result, config, std::move(input_hash));
  report.is_sdp = true;
  report.solution_mat = std::move(result.z);
  return report;
}

inline json report_to_json(const RunReport& report) {
  json j;
  j["scheme"] = report.scheme;
  j["status"] = to_string(report.status);
  j["objective"] = report.objective;
  j["cE"] = report.c_anchor;
  j["epsilon_requested"] = report.epsilon_requested;
  if (report.certificate) {
    j["epsilon_certified"] = report.certificate->epsilon;
    j["certificate"] = {{"epsilon", report.certificate->epsilon},
                        {"val", report.certificate->val},
                        {"opt_lower", report.certificate->opt_lower}};
  } else {
    j["epsilon_certified"] = nullptr;
    j["certificate"] = nullptr;
  }
  j["outer_stages"] = report.outer_stages;
  j["inner_iterations_total"] = report.inner_iterations_total;
  j["stage_budget"] = report.stage_budget;
  j["final_budget"] = report.final_budget;
  j["final_iterations"] = report.final_iterations;
  j["val_phase1"] = report.val_y;
  json stages = json::array();
  for (const StageRecord& s : report.stages)
    stages.push_back({{"stage", s.stage},
                      {"val", s.val},
                      {"inner_iterations", s.inner_iterations},
                      {"lambda_min_v", s.lambda_min_v}});
  j["stages"] = std::move(stages);
  if (report.is_sdp) {
    json rows = json::array();
    for (int r = 0; r < report.solution_mat.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < report.solution_mat.cols(); ++c) row.push_back(report.solution_mat(r, c));
      rows.push_back(std::move(row));
    }
    j["solution"] = std::move(rows);
  } else {
    j["solution"] = std::vector<double>(report.solution_vec.begin(), report.solution_vec.end());
  }
  j["input_hash"] = report.input_hash;
  j["seed"] = report.seed;
  j["timestamp"] = report.timestamp;
  return j;
}

/// Emits JSON-lines trace records: one per completed stage, and, with a
/// positive stride, one per sampled inner iteration.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, long stride) : out_(&out), stride_(stride) {}

  SchemeObserver observer() {
    SchemeObserver obs;
    obs.on_stage = [this](const StageRecord& r) {
      json j;
      j["type"] = "stage";
      j["stage"] = r.stage;
      j["val"] = r.val;
      j["inner_iterations"] = r.inner_iterations;
      j["lambda_min_v"] = r.lambda_min_v;
      j["seconds"] = r.seconds;
      (*out_) << j.dump() << "\n";
    };
    if (stride_ > 0) {
      obs.on_inner = [this](int stage, long k, double value) {
        if (k % stride_ != 0) return;
        json j;
        j["type"] = "inner";
        j["stage"] = stage;
        j["k"] = k;
        j["value"] = value;
        (*out_) << j.dump() << "\n";
      };
    }
    return obs;
  }

 private:
  std::ostream* out_;
  long stride_;
};

}  // namespace radial
