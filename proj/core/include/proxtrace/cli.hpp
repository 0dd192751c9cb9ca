#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "proxtrace/algorithms.hpp"
#include "proxtrace/analysis.hpp"

namespace proxtrace {

enum class Algorithm {
  kProxGrad,
  kProxGradBacktracking,
  kProximalPoint,
  kGradientDescent,
  kAlternatingProjections,
  kAveragedProjections,
  kCyclicProjections,
};

/// A fully validated experiment description parsed from the versioned JSON
/// config format. Unknown fields and kind/arity mismatches are rejected at
/// parse time with ConfigError.
struct ProblemConfig {
  Eigen::Index dimension = 0;
  Algorithm algorithm = Algorithm::kProxGrad;
  AveragedMode mode = AveragedMode::kDirect;
  std::optional<SmoothOracle> f;
  std::optional<ProxableOracle> g;
  std::vector<ConvexSet> sets;
  Vec x0;
  std::optional<StepsizeSchedule> schedule;
  std::optional<BacktrackParams> backtrack;
  bool enforce_guarantee = true;
  StopRule stop;
  std::int64_t seed = 0;
  std::optional<Vec> solution_hint;
};

ProblemConfig parse_problem_config(const std::string& json_text);
ProblemConfig load_problem_config(const std::filesystem::path& path);

/// Runs the configured algorithm and returns its trajectory (the x-sequence
/// for alternating projections).
Trajectory run_configured(const ProblemConfig& config);

/// Optional command-line overrides applied on top of a config file.
struct RunOverrides {
  std::optional<std::int64_t> seed;
  std::optional<std::size_t> max_iters;
  std::optional<double> step_tolerance;
};

/// Exit codes: 0 success, 2 config error, 3 runtime (oracle/guarantee)
/// error. Writes the trajectory CSV and the report JSON.
int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_trajectory_path,
            const std::filesystem::path& out_report_path, double tol = 1e-9,
            const RunOverrides& overrides = {});

/// Prints the verdict JSON on stdout. Exit codes: 0 certified, 1 refuted,
/// 2 parse error.
int cmd_check(const std::filesystem::path& trajectory_csv_path, double tol = 1e-9);

/// Runs all three averaged-projection modes for the configured set family
/// and prints the maximum per-iterate coordinate discrepancy. Exit codes:
/// 0 if the modes agree within 1e-10, 1 otherwise, 2/3 on errors.
int cmd_compare_averaged(const std::filesystem::path& config_path);

/// Renders a 2D trajectory as an SVG polyline with start/end markers.
/// Exit codes: 0 success, 2 on parse error or non-2D input.
int cmd_plot(const std::filesystem::path& trajectory_csv_path,
             const std::filesystem::path& out_svg_path);

}  // namespace proxtrace
