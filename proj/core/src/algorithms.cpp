#include "proxtrace/algorithms.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace proxtrace {

StepsizeSchedule StepsizeSchedule::fixed(double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("schedule: fixed stepsize must be positive");
  return StepsizeSchedule(Kind::kFixed, alpha, {});
}

StepsizeSchedule StepsizeSchedule::explicit_list(std::vector<double> alphas) {
  if (alphas.empty()) throw ConfigError("schedule: stepsize list is empty");
  for (double a : alphas)
    if (!(a > 0.0)) throw ConfigError("schedule: stepsizes must be positive");
  return StepsizeSchedule(Kind::kList, 0.0, std::move(alphas));
}

StepsizeSchedule StepsizeSchedule::auto_fraction(double theta) {
  if (!(theta > 0.0)) throw ConfigError("schedule: auto fraction must be positive");
  return StepsizeSchedule(Kind::kAuto, theta, {});
}

double StepsizeSchedule::at(std::size_t k, double lipschitz) const {
  switch (kind_) {
    case Kind::kFixed:
      return value_;
    case Kind::kList:
      return alphas_[std::min(k, alphas_.size() - 1)];
    case Kind::kAuto:
      return value_ * (1.0 / lipschitz);
  }
  return value_;
}

namespace {

Eigen::Index pair_dimension(const ObjectivePair& pair) {
  return merge_dims(pair.f.dim, pair.g.dim, "objective pair");
}

void check_start(const ObjectivePair& pair, const Vec& x0, const StopRule& stop) {
  if (stop.max_iters < 1) throw ConfigError("stop rule: max_iters must be >= 1");
  if (stop.step_tolerance < 0.0) throw ConfigError("stop rule: step tolerance must be >= 0");
  const Eigen::Index d = pair_dimension(pair);
  if (d != kAnyDimension && x0.size() != d)
    throw ConfigError("run: x0 dimension " + std::to_string(x0.size()) +
                      " does not match problem dimension " + std::to_string(d));
  if (x0.size() < 1) throw ConfigError("run: x0 must have dimension >= 1");
  if (!all_finite(x0)) throw ConfigError("run: x0 has non-finite coordinates");
}

Trajectory run_prox_grad_labeled(std::string label, const ObjectivePair& pair, const Vec& x0,
                                 const StepsizeSchedule& schedule, const StopRule& stop,
                                 bool enforce_guarantee) {
  check_start(pair, x0, stop);
  const double limit = 1.0 / pair.f.lipschitz;
  TrajectoryBuilder builder(std::move(label));
  builder.start(x0, pair.objective(x0));
  Vec x = x0;
  for (std::size_t k = 0; k < stop.max_iters; ++k) {
    const double alpha = schedule.at(k, pair.f.lipschitz);
    if (enforce_guarantee && alpha > limit) throw GuaranteeViolation(k, alpha, limit);
    Vec next = prox_grad_step(pair, alpha, x);
    const double step = distance(next, x);
    builder.append(next, alpha, pair.objective(next));
    x = std::move(next);
    if (step <= stop.step_tolerance) break;
  }
  return std::move(builder).freeze();
}

Trajectory run_backtracking_labeled(std::string label, const ObjectivePair& pair, const Vec& x0,
                                    const BacktrackParams& params, const StopRule& stop) {
  if (!(params.alpha_init > 0.0)) throw ConfigError("backtracking: alpha_init must be positive");
  if (!(params.shrink > 0.0 && params.shrink < 1.0))
    throw ConfigError("backtracking: shrink factor must lie in (0, 1)");
  if (params.max_shrinks < 1) throw ConfigError("backtracking: max_shrinks must be >= 1");
  check_start(pair, x0, stop);

  TrajectoryBuilder builder(std::move(label));
  builder.start(x0, pair.objective(x0));
  Vec x = x0;
  for (std::size_t k = 0; k < stop.max_iters; ++k) {
    double alpha = params.alpha_init;
    const double fx = pair.f.eval(x);
    const Vec gx = pair.f.grad(x);
    Vec candidate = prox_grad_step(pair, alpha, x);
    std::size_t shrinks = 0;
    while (pair.f.eval(candidate) >
           fx + gx.dot(candidate - x) + (candidate - x).squaredNorm() / (2.0 * alpha)) {
      if (++shrinks > params.max_shrinks)
        throw BacktrackError("backtracking: acceptance test still failing after " +
                             std::to_string(params.max_shrinks) + " shrinks at k=" +
                             std::to_string(k));
      alpha *= params.shrink;
      candidate = prox_grad_step(pair, alpha, x);
    }
    const double step = distance(candidate, x);
    builder.append(candidate, alpha, pair.objective(candidate));
    x = std::move(candidate);
    if (step <= stop.step_tolerance) break;
  }
  return std::move(builder).freeze();
}

double merit_value(const std::vector<ConvexSet>& sets, const Vec& x) {
  double s = 0.0;
  for (const ConvexSet& c : sets) s += 0.5 * (x - c.project(x)).squaredNorm();
  return s;
}

void check_set_family(const std::vector<ConvexSet>& sets, const Vec& x0) {
  if (sets.empty()) throw ConfigError("projection run: empty set list");
  for (const ConvexSet& c : sets)
    if (c.dimension() != x0.size())
      throw ConfigError("projection run: set dimension does not match x0");
}

}  // namespace

Vec prox_grad_step(const ObjectivePair& pair, double alpha, const Vec& x) {
  if (!(alpha > 0.0)) throw ConfigError("prox_grad_step: alpha must be positive");
  const Eigen::Index d = pair_dimension(pair);
  if (d != kAnyDimension && x.size() != d)
    throw ConfigError("prox_grad_step: point dimension does not match problem");
  return pair.g.prox(alpha, x - alpha * pair.f.grad(x));
}

Trajectory run_prox_grad(const ObjectivePair& pair, const Vec& x0,
                         const StepsizeSchedule& schedule, const StopRule& stop,
                         bool enforce_guarantee) {
  return run_prox_grad_labeled("prox_grad", pair, x0, schedule, stop, enforce_guarantee);
}

Trajectory run_prox_grad_backtracking(const ObjectivePair& pair, const Vec& x0,
                                      const BacktrackParams& params, const StopRule& stop) {
  return run_backtracking_labeled("prox_grad_backtracking", pair, x0, params, stop);
}

Trajectory run_proximal_point(const ProxableOracle& g, const Vec& x0,
                              const StepsizeSchedule& schedule, const StopRule& stop) {
  ObjectivePair pair{zero_smooth(x0.size()), g};
  return run_prox_grad_labeled("proximal_point", pair, x0, schedule, stop, false);
}

Trajectory run_gradient_descent(const SmoothOracle& f, const Vec& x0,
                                const StepsizeSchedule& schedule, const StopRule& stop,
                                bool enforce_guarantee) {
  ObjectivePair pair{f, zero_proxable(x0.size())};
  return run_prox_grad_labeled("gradient_descent", pair, x0, schedule, stop,
                               enforce_guarantee);
}

Trajectory run_gradient_descent(const SmoothOracle& f, const Vec& x0,
                                const BacktrackParams& params, const StopRule& stop) {
  ObjectivePair pair{f, zero_proxable(x0.size())};
  return run_backtracking_labeled("gradient_descent", pair, x0, params, stop);
}

std::pair<Trajectory, Trajectory> run_alternating_projections(const ConvexSet& A,
                                                              const ConvexSet& B,
                                                              const Vec& x0,
                                                              const StopRule& stop) {
  if (A.dimension() != B.dimension() || A.dimension() != x0.size())
    throw ConfigError("alternating projections: dimensions of A, B, x0 must agree");
  ObjectivePair pair{half_squared_distance(A), indicator(B)};
  Trajectory xs = run_prox_grad_labeled("alternating_projections", pair, x0,
                                        StepsizeSchedule::fixed(1.0), stop, true);
  // y_{k+1} = P_A(x_k); recomputing from the frozen x-sequence reproduces the
  // exact projections used inside the run.
  std::vector<Vec> ys;
  ys.reserve(xs.size() - 1);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) ys.push_back(A.project(xs[k]));
  return {std::move(xs), Trajectory("alternating_projections_y", std::move(ys))};
}

Trajectory run_averaged_projections(const std::vector<ConvexSet>& sets, const Vec& x0,
                                    const StopRule& stop, AveragedMode mode) {
  check_set_family(sets, x0);
  const Eigen::Index d = x0.size();
  const auto n = static_cast<double>(sets.size());

  switch (mode) {
    case AveragedMode::kDirect: {
      if (stop.max_iters < 1) throw ConfigError("stop rule: max_iters must be >= 1");
      TrajectoryBuilder builder("averaged_projections:direct");
      builder.start(x0, merit_value(sets, x0));
      Vec x = x0;
      for (std::size_t k = 0; k < stop.max_iters; ++k) {
        Vec acc = Vec::Zero(d);
        for (const ConvexSet& c : sets) acc += c.project(x);
        acc /= n;
        const double step = distance(acc, x);
        builder.append(acc, 1.0 / n, merit_value(sets, acc));
        x = std::move(acc);
        if (step <= stop.step_tolerance) break;
      }
      return std::move(builder).freeze();
    }
    case AveragedMode::kGradient: {
      std::vector<SmoothOracle> parts;
      parts.reserve(sets.size());
      for (const ConvexSet& c : sets) parts.push_back(half_squared_distance(c));
      ObjectivePair pair{sum_smooth(parts), zero_proxable(d)};
      return run_prox_grad_labeled("averaged_projections:gradient", pair, x0,
                                   StepsizeSchedule::fixed(1.0 / n), stop, true);
    }
    case AveragedMode::kProduct: {
      const auto blocks = static_cast<Eigen::Index>(sets.size());
      Vec stacked(d * blocks);
      for (Eigen::Index i = 0; i < blocks; ++i) stacked.segment(i * d, d) = x0;
      auto [xs, ys] = run_alternating_projections(product_set(sets), diagonal_set(d, blocks),
                                                  stacked, stop);
      (void)ys;
      TrajectoryBuilder builder("averaged_projections:product");
      builder.start(xs[0].head(d), merit_value(sets, xs[0].head(d)));
      for (std::size_t k = 1; k < xs.size(); ++k) {
        Vec block = xs[k].head(d);
        const double obj = merit_value(sets, block);
        builder.append(std::move(block), 1.0 / n, obj);
      }
      return std::move(builder).freeze();
    }
  }
  throw ConfigError("averaged projections: unknown mode");
}

Trajectory run_cyclic_projections(const std::vector<ConvexSet>& sets, const Vec& x0,
                                  const StopRule& stop) {
  check_set_family(sets, x0);
  if (stop.max_iters < 1) throw ConfigError("stop rule: max_iters must be >= 1");
  TrajectoryBuilder builder("cyclic_projections");
  builder.start(x0);
  Vec x = x0;
  for (std::size_t k = 0; k < stop.max_iters; ++k) {
    Vec next = x;
    for (const ConvexSet& c : sets) next = c.project(next);
    const double step = distance(next, x);
    builder.append(std::move(next));
    x = builder.back();
    if (step <= stop.step_tolerance) break;
  }
  return std::move(builder).freeze();
}

}  // namespace proxtrace
