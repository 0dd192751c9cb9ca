#include "proxtrace/cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace proxtrace {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) bad(ctx + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* k) { return it.key() == k; });
    if (!known) bad(ctx + ": unknown field '" + it.key() + "'");
  }
}

const json& need(const json& obj, const std::string& ctx, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(ctx + ": missing field '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& ctx) {
  if (!v.is_number()) bad(ctx + ": expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) bad(ctx + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) bad(ctx + ": expected a string");
  return v.get<std::string>();
}

Vec as_vector(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.empty()) bad(ctx + ": expected a non-empty array of numbers");
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const json& cell : v) out[i++] = as_number(cell, ctx);
  if (!all_finite(out)) bad(ctx + ": coordinates must be finite");
  return out;
}

Eigen::MatrixXd as_matrix(const json& v, const std::string& ctx) {
  if (!v.is_array() || v.empty()) bad(ctx + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  Eigen::Index r = 0;
  for (const json& row : v) {
    const Vec parsed = as_vector(row, ctx);
    if (cols < 0) {
      cols = parsed.size();
      out.resize(rows, cols);
    } else if (parsed.size() != cols) {
      bad(ctx + ": ragged matrix rows");
    }
    out.row(r++) = parsed;
  }
  return out;
}

ConvexSet parse_set(const json& spec, Eigen::Index dim, const std::string& ctx) {
  const std::string kind = as_string(need(spec, ctx, "kind"), ctx + ".kind");
  ConvexSet set = [&]() -> ConvexSet {
    if (kind == "halfspace") {
      check_keys(spec, ctx, {"kind", "a", "b"});
      return halfspace(as_vector(need(spec, ctx, "a"), ctx + ".a"),
                       as_number(need(spec, ctx, "b"), ctx + ".b"));
    }
    if (kind == "ball") {
      check_keys(spec, ctx, {"kind", "center", "radius"});
      return ball(as_vector(need(spec, ctx, "center"), ctx + ".center"),
                  as_number(need(spec, ctx, "radius"), ctx + ".radius"));
    }
    if (kind == "box") {
      check_keys(spec, ctx, {"kind", "lo", "hi"});
      return box(as_vector(need(spec, ctx, "lo"), ctx + ".lo"),
                 as_vector(need(spec, ctx, "hi"), ctx + ".hi"));
    }
    if (kind == "affine") {
      check_keys(spec, ctx, {"kind", "A", "b"});
      return affine_subspace(as_matrix(need(spec, ctx, "A"), ctx + ".A"),
                             as_vector(need(spec, ctx, "b"), ctx + ".b"));
    }
    bad(ctx + ": unknown set kind '" + kind + "'");
  }();
  if (set.dimension() != dim)
    bad(ctx + ": set dimension " + std::to_string(set.dimension()) +
        " does not match problem dimension " + std::to_string(dim));
  return set;
}

SmoothOracle parse_smooth(const json& spec, Eigen::Index dim, const std::string& ctx) {
  const std::string kind = as_string(need(spec, ctx, "kind"), ctx + ".kind");
  if (kind == "quadratic") {
    check_keys(spec, ctx, {"kind", "Q", "b", "c"});
    const Eigen::MatrixXd Q = as_matrix(need(spec, ctx, "Q"), ctx + ".Q");
    const Vec b = as_vector(need(spec, ctx, "b"), ctx + ".b");
    const double c = spec.contains("c") ? as_number(spec["c"], ctx + ".c") : 0.0;
    if (Q.rows() != dim) bad(ctx + ": Q dimension does not match problem dimension");
    return quadratic(Q, b, c);
  }
  if (kind == "half_sq_dist") {
    check_keys(spec, ctx, {"kind", "set"});
    return half_squared_distance(parse_set(need(spec, ctx, "set"), dim, ctx + ".set"));
  }
  if (kind == "sum") {
    check_keys(spec, ctx, {"kind", "components"});
    const json& comps = need(spec, ctx, "components");
    if (!comps.is_array() || comps.empty()) bad(ctx + ".components: expected a non-empty array");
    std::vector<SmoothOracle> parts;
    std::size_t i = 0;
    for (const json& comp : comps)
      parts.push_back(parse_smooth(comp, dim, ctx + ".components[" + std::to_string(i++) + "]"));
    return sum_smooth(parts);
  }
  if (kind == "zero") {
    check_keys(spec, ctx, {"kind"});
    return zero_smooth(dim);
  }
  bad(ctx + ": unknown smooth oracle kind '" + kind + "'");
}

ProxableOracle parse_proxable(const json& spec, Eigen::Index dim, const std::string& ctx) {
  const std::string kind = as_string(need(spec, ctx, "kind"), ctx + ".kind");
  if (kind == "indicator") {
    check_keys(spec, ctx, {"kind", "set"});
    return indicator(parse_set(need(spec, ctx, "set"), dim, ctx + ".set"));
  }
  if (kind == "l1") {
    check_keys(spec, ctx, {"kind", "weight"});
    return l1_norm(as_number(need(spec, ctx, "weight"), ctx + ".weight"));
  }
  if (kind == "zero") {
    check_keys(spec, ctx, {"kind"});
    return zero_proxable(dim);
  }
  bad(ctx + ": unknown proxable oracle kind '" + kind + "'");
}

StepsizeSchedule parse_schedule(const json& spec, const std::string& ctx) {
  const std::string type = as_string(need(spec, ctx, "type"), ctx + ".type");
  if (type == "fixed") {
    check_keys(spec, ctx, {"type", "alpha"});
    return StepsizeSchedule::fixed(as_number(need(spec, ctx, "alpha"), ctx + ".alpha"));
  }
  if (type == "list") {
    check_keys(spec, ctx, {"type", "alphas"});
    const Vec alphas = as_vector(need(spec, ctx, "alphas"), ctx + ".alphas");
    return StepsizeSchedule::explicit_list(
        std::vector<double>(alphas.begin(), alphas.end()));
  }
  if (type == "auto") {
    check_keys(spec, ctx, {"type", "fraction"});
    return StepsizeSchedule::auto_fraction(
        as_number(need(spec, ctx, "fraction"), ctx + ".fraction"));
  }
  bad(ctx + ": unknown schedule type '" + type + "'");
}

BacktrackParams parse_backtrack(const json& spec, const std::string& ctx) {
  check_keys(spec, ctx, {"alpha_init", "shrink", "max_shrinks"});
  BacktrackParams p;
  p.alpha_init = as_number(need(spec, ctx, "alpha_init"), ctx + ".alpha_init");
  if (spec.contains("shrink")) p.shrink = as_number(spec["shrink"], ctx + ".shrink");
  if (spec.contains("max_shrinks")) {
    const std::int64_t n = as_integer(spec["max_shrinks"], ctx + ".max_shrinks");
    if (n < 1) bad(ctx + ".max_shrinks: must be >= 1");
    p.max_shrinks = static_cast<std::size_t>(n);
  }
  return p;
}

StopRule parse_stop(const json& spec, const std::string& ctx) {
  check_keys(spec, ctx, {"max_iters", "step_tolerance"});
  StopRule stop;
  if (spec.contains("max_iters")) {
    const std::int64_t n = as_integer(spec["max_iters"], ctx + ".max_iters");
    if (n < 1) bad(ctx + ".max_iters: must be >= 1");
    stop.max_iters = static_cast<std::size_t>(n);
  }
  if (spec.contains("step_tolerance")) {
    stop.step_tolerance = as_number(spec["step_tolerance"], ctx + ".step_tolerance");
    if (stop.step_tolerance < 0.0) bad(ctx + ".step_tolerance: must be >= 0");
  }
  return stop;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "prox_grad") return Algorithm::kProxGrad;
  if (name == "prox_grad_backtracking") return Algorithm::kProxGradBacktracking;
  if (name == "proximal_point") return Algorithm::kProximalPoint;
  if (name == "gradient_descent") return Algorithm::kGradientDescent;
  if (name == "alternating_projections") return Algorithm::kAlternatingProjections;
  if (name == "averaged_projections") return Algorithm::kAveragedProjections;
  if (name == "cyclic_projections") return Algorithm::kCyclicProjections;
  bad("config: unknown algorithm '" + name + "'");
}

AveragedMode parse_mode(const std::string& name) {
  if (name == "direct") return AveragedMode::kDirect;
  if (name == "gradient") return AveragedMode::kGradient;
  if (name == "product") return AveragedMode::kProduct;
  bad("config: unknown averaged-projections mode '" + name + "'");
}

void forbid(const json& root, const char* key, const std::string& why) {
  if (root.contains(key)) bad("config: field '" + std::string(key) + "' is not used by " + why);
}

ProblemConfig parse_impl(const std::string& text) {
  const json root = json::parse(text);
  check_keys(root, "config",
             {"version", "dimension", "algorithm", "mode", "f", "g", "sets", "x0",
              "schedule", "backtrack", "enforce_guarantee", "stop", "seed",
              "solution_hint"});
  if (as_integer(need(root, "config", "version"), "config.version") != 1)
    bad("config: unsupported version (expected 1)");

  ProblemConfig cfg;
  const std::int64_t dim = as_integer(need(root, "config", "dimension"), "config.dimension");
  if (dim < 1) bad("config.dimension: must be >= 1");
  cfg.dimension = static_cast<Eigen::Index>(dim);
  cfg.algorithm =
      parse_algorithm(as_string(need(root, "config", "algorithm"), "config.algorithm"));

  cfg.x0 = as_vector(need(root, "config", "x0"), "config.x0");
  if (cfg.x0.size() != cfg.dimension)
    bad("config.x0: expected " + std::to_string(cfg.dimension) + " coordinates");

  if (root.contains("stop")) cfg.stop = parse_stop(root["stop"], "config.stop");
  if (root.contains("seed")) cfg.seed = as_integer(root["seed"], "config.seed");
  if (root.contains("solution_hint")) {
    cfg.solution_hint = as_vector(root["solution_hint"], "config.solution_hint");
    if (cfg.solution_hint->size() != cfg.dimension)
      bad("config.solution_hint: dimension mismatch");
  }
  if (root.contains("enforce_guarantee")) {
    if (!root["enforce_guarantee"].is_boolean())
      bad("config.enforce_guarantee: expected a boolean");
    cfg.enforce_guarantee = root["enforce_guarantee"].get<bool>();
  }
  if (root.contains("f")) cfg.f = parse_smooth(root["f"], cfg.dimension, "config.f");
  if (root.contains("g")) cfg.g = parse_proxable(root["g"], cfg.dimension, "config.g");
  if (root.contains("schedule"))
    cfg.schedule = parse_schedule(root["schedule"], "config.schedule");
  if (root.contains("backtrack"))
    cfg.backtrack = parse_backtrack(root["backtrack"], "config.backtrack");
  if (root.contains("mode"))
    cfg.mode = parse_mode(as_string(root["mode"], "config.mode"));
  if (root.contains("sets")) {
    const json& sets = root["sets"];
    if (!sets.is_array() || sets.empty()) bad("config.sets: expected a non-empty array");
    std::size_t i = 0;
    for (const json& s : sets)
      cfg.sets.push_back(parse_set(s, cfg.dimension, "config.sets[" + std::to_string(i++) + "]"));
  }

  auto require_field = [&](const char* key) {
    if (!root.contains(key)) bad("config: algorithm requires field '" + std::string(key) + "'");
  };

  switch (cfg.algorithm) {
    case Algorithm::kProxGrad:
      require_field("f");
      require_field("g");
      require_field("schedule");
      forbid(root, "sets", "prox_grad");
      forbid(root, "backtrack", "prox_grad");
      forbid(root, "mode", "prox_grad");
      break;
    case Algorithm::kProxGradBacktracking:
      require_field("f");
      require_field("g");
      require_field("backtrack");
      forbid(root, "sets", "prox_grad_backtracking");
      forbid(root, "schedule", "prox_grad_backtracking");
      forbid(root, "enforce_guarantee", "prox_grad_backtracking");
      forbid(root, "mode", "prox_grad_backtracking");
      break;
    case Algorithm::kProximalPoint:
      require_field("g");
      require_field("schedule");
      forbid(root, "f", "proximal_point");
      forbid(root, "sets", "proximal_point");
      forbid(root, "backtrack", "proximal_point");
      forbid(root, "enforce_guarantee", "proximal_point");
      forbid(root, "mode", "proximal_point");
      break;
    case Algorithm::kGradientDescent:
      require_field("f");
      forbid(root, "g", "gradient_descent");
      forbid(root, "sets", "gradient_descent");
      forbid(root, "mode", "gradient_descent");
      if (root.contains("schedule") == root.contains("backtrack"))
        bad("config: gradient_descent needs exactly one of 'schedule' or 'backtrack'");
      if (root.contains("backtrack"))
        forbid(root, "enforce_guarantee", "backtracking gradient_descent");
      break;
    case Algorithm::kAlternatingProjections:
      require_field("sets");
      if (cfg.sets.size() != 2)
        bad("config.sets: alternating_projections needs exactly two sets");
      forbid(root, "f", "alternating_projections");
      forbid(root, "g", "alternating_projections");
      forbid(root, "schedule", "alternating_projections");
      forbid(root, "backtrack", "alternating_projections");
      forbid(root, "enforce_guarantee", "alternating_projections");
      forbid(root, "mode", "alternating_projections");
      break;
    case Algorithm::kAveragedProjections:
      require_field("sets");
      forbid(root, "f", "averaged_projections");
      forbid(root, "g", "averaged_projections");
      forbid(root, "schedule", "averaged_projections");
      forbid(root, "backtrack", "averaged_projections");
      forbid(root, "enforce_guarantee", "averaged_projections");
      break;
    case Algorithm::kCyclicProjections:
      require_field("sets");
      forbid(root, "f", "cyclic_projections");
      forbid(root, "g", "cyclic_projections");
      forbid(root, "schedule", "cyclic_projections");
      forbid(root, "backtrack", "cyclic_projections");
      forbid(root, "enforce_guarantee", "cyclic_projections");
      forbid(root, "mode", "cyclic_projections");
      break;
  }
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ProblemConfig parse_problem_config(const std::string& json_text) {
  try {
    return parse_impl(json_text);
  } catch (const json::exception& e) {
    bad(std::string("config: ") + e.what());
  }
}

ProblemConfig load_problem_config(const std::filesystem::path& path) {
  return parse_problem_config(read_text_file(path));
}

Trajectory run_configured(const ProblemConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kProxGrad:
      return run_prox_grad({*cfg.f, *cfg.g}, cfg.x0, *cfg.schedule, cfg.stop,
                           cfg.enforce_guarantee);
    case Algorithm::kProxGradBacktracking:
      return run_prox_grad_backtracking({*cfg.f, *cfg.g}, cfg.x0, *cfg.backtrack, cfg.stop);
    case Algorithm::kProximalPoint:
      return run_proximal_point(*cfg.g, cfg.x0, *cfg.schedule, cfg.stop);
    case Algorithm::kGradientDescent:
      if (cfg.backtrack) return run_gradient_descent(*cfg.f, cfg.x0, *cfg.backtrack, cfg.stop);
      return run_gradient_descent(*cfg.f, cfg.x0, *cfg.schedule, cfg.stop,
                                  cfg.enforce_guarantee);
    case Algorithm::kAlternatingProjections:
      return run_alternating_projections(cfg.sets[0], cfg.sets[1], cfg.x0, cfg.stop).first;
    case Algorithm::kAveragedProjections:
      return run_averaged_projections(cfg.sets, cfg.x0, cfg.stop, cfg.mode);
    case Algorithm::kCyclicProjections:
      return run_cyclic_projections(cfg.sets, cfg.x0, cfg.stop);
  }
  bad("config: unknown algorithm");
}

namespace {

void apply_overrides(ProblemConfig& cfg, const RunOverrides& overrides) {
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.max_iters) {
    if (*overrides.max_iters < 1) bad("--max-iters: must be >= 1");
    cfg.stop.max_iters = *overrides.max_iters;
  }
  if (overrides.step_tolerance) {
    if (*overrides.step_tolerance < 0.0) bad("--step-tol: must be >= 0");
    cfg.stop.step_tolerance = *overrides.step_tolerance;
  }
}

int report_error(const std::exception& e, int code) {
  std::cerr << "error: " << e.what() << "\n";
  return code;
}

}  // namespace

int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_trajectory_path,
            const std::filesystem::path& out_report_path, double tol,
            const RunOverrides& overrides) {
  ProblemConfig cfg;
  try {
    cfg = load_problem_config(config_path);
    apply_overrides(cfg, overrides);
  } catch (const std::exception& e) {
    return report_error(e, 2);
  }
  try {
    const Trajectory t = run_configured(cfg);
    write_trajectory_csv(t, out_trajectory_path);
    const TrajectoryReport r = report(t, cfg.solution_hint, tol);
    std::ofstream out(out_report_path);
    if (!out) bad("cannot open " + out_report_path.string());
    out << report_to_json(r, t.label(), tol, cfg.seed) << "\n";
    return 0;
  } catch (const std::exception& e) {
    return report_error(e, 3);
  }
}

int cmd_check(const std::filesystem::path& trajectory_csv_path, double tol) {
  try {
    const Trajectory t = read_trajectory_csv(trajectory_csv_path);
    const SelfContractionVerdict verdict = check_self_contracted(t, tol);
    std::cout << verdict_to_json(verdict) << "\n";
    return verdict.is_self_contracted ? 0 : 1;
  } catch (const std::exception& e) {
    return report_error(e, 2);
  }
}

int cmd_compare_averaged(const std::filesystem::path& config_path) {
  ProblemConfig cfg;
  try {
    cfg = load_problem_config(config_path);
    if (cfg.algorithm != Algorithm::kAveragedProjections)
      bad("compare-averaged: config must use algorithm 'averaged_projections'");
  } catch (const std::exception& e) {
    return report_error(e, 2);
  }
  try {
    const Trajectory direct =
        run_averaged_projections(cfg.sets, cfg.x0, cfg.stop, AveragedMode::kDirect);
    const Trajectory gradient =
        run_averaged_projections(cfg.sets, cfg.x0, cfg.stop, AveragedMode::kGradient);
    const Trajectory product =
        run_averaged_projections(cfg.sets, cfg.x0, cfg.stop, AveragedMode::kProduct);
    const std::size_t common =
        std::min({direct.size(), gradient.size(), product.size()});
    double worst = 0.0;
    for (std::size_t k = 0; k < common; ++k) {
      worst = std::max(worst, (direct[k] - gradient[k]).cwiseAbs().maxCoeff());
      worst = std::max(worst, (direct[k] - product[k]).cwiseAbs().maxCoeff());
      worst = std::max(worst, (gradient[k] - product[k]).cwiseAbs().maxCoeff());
    }
    std::cout << "compared_iterates=" << common
              << " max_coordinate_discrepancy=" << format_double(worst) << "\n";
    return worst <= 1e-10 ? 0 : 1;
  } catch (const std::exception& e) {
    return report_error(e, 3);
  }
}

int cmd_plot(const std::filesystem::path& trajectory_csv_path,
             const std::filesystem::path& out_svg_path) {
  try {
    const Trajectory t = read_trajectory_csv(trajectory_csv_path);
    if (t.dimension() != 2) bad("plot: trajectory dimension must be exactly 2");

    double xmin = t[0][0], xmax = t[0][0], ymin = t[0][1], ymax = t[0][1];
    for (std::size_t k = 1; k < t.size(); ++k) {
      xmin = std::min(xmin, t[k][0]);
      xmax = std::max(xmax, t[k][0]);
      ymin = std::min(ymin, t[k][1]);
      ymax = std::max(ymax, t[k][1]);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double margin = 0.05 * span;
    const double w = (xmax - xmin) + 2.0 * margin;
    const double h = (ymax - ymin) + 2.0 * margin;
    // SVG y grows downward; emit flipped y coordinates.
    auto sx = [&](double x) { return x - xmin + margin; };
    auto sy = [&](double y) { return (ymax + margin) - y; };

    std::ofstream out(out_svg_path);
    if (!out) bad("cannot open " + out_svg_path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
        << format_double(w) << " " << format_double(h) << "\" width=\"640\" height=\""
        << format_double(640.0 * h / w) << "\">\n";
    out << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\""
        << format_double(span / 400.0) << "\" points=\"";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k > 0) out << " ";
      out << format_double(sx(t[k][0])) << "," << format_double(sy(t[k][1]));
    }
    out << "\"/>\n";
    const double r = span / 80.0;
    out << "  <circle cx=\"" << format_double(sx(t.front()[0])) << "\" cy=\""
        << format_double(sy(t.front()[1])) << "\" r=\"" << format_double(r)
        << "\" fill=\"#2ca02c\"/>\n";
    out << "  <circle cx=\"" << format_double(sx(t.back()[0])) << "\" cy=\""
        << format_double(sy(t.back()[1])) << "\" r=\"" << format_double(r)
        << "\" fill=\"#d62728\"/>\n";
    out << "</svg>\n";
    return 0;
  } catch (const ConfigError& e) {
    return report_error(e, 2);
  } catch (const std::exception& e) {
    return report_error(e, 3);
  }
}

}  // namespace proxtrace
