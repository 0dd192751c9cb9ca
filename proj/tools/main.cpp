#include <CLI11.hpp>

#include <optional>
#include <string>

#include "proxtrace/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"proxtrace: proximal-family solvers with trajectory self-contraction audits"};
  app.require_subcommand(1);

  std::string config_path, trajectory_path, report_path, csv_path, svg_path;
  double tol = 1e-9;
  std::optional<std::int64_t> seed;
  std::optional<std::size_t> max_iters;
  std::optional<double> step_tol;

  CLI::App* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("config", config_path, "problem config JSON")->required();
  run->add_option("trajectory", trajectory_path, "output trajectory CSV")->required();
  run->add_option("report", report_path, "output report JSON")->required();
  run->add_option("--tol", tol, "self-contraction tolerance");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--max-iters", max_iters, "override the iteration cap");
  run->add_option("--step-tol", step_tol, "override the step-norm stopping tolerance");

  CLI::App* check = app.add_subcommand("check", "certify or refute a trajectory CSV");
  check->add_option("trajectory", csv_path, "trajectory CSV")->required();
  check->add_option("--tol", tol, "self-contraction tolerance");

  CLI::App* compare =
      app.add_subcommand("compare-averaged", "run all three averaged-projection modes");
  compare->add_option("config", config_path, "problem config JSON")->required();

  CLI::App* plot = app.add_subcommand("plot", "render a 2D trajectory as SVG");
  plot->add_option("trajectory", csv_path, "trajectory CSV")->required();
  plot->add_option("svg", svg_path, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) {
    proxtrace::RunOverrides overrides;
    overrides.seed = seed;
    overrides.max_iters = max_iters;
    overrides.step_tolerance = step_tol;
    return proxtrace::cmd_run(config_path, trajectory_path, report_path, tol, overrides);
  }
  if (check->parsed()) return proxtrace::cmd_check(csv_path, tol);
  if (compare->parsed()) return proxtrace::cmd_compare_averaged(config_path);
  if (plot->parsed()) return proxtrace::cmd_plot(csv_path, svg_path);
  return 2;
}
