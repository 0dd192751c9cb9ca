#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "proxtrace/core.hpp"
#include "proxtrace/oracles.hpp"
#include "proxtrace/sets.hpp"

namespace proxtrace {

/// Per-iteration stepsize source: a fixed value, an explicit list (the last
/// entry repeats past the end), or a fraction of 1/L resolved at run time.
class StepsizeSchedule {
public:
  static StepsizeSchedule fixed(double alpha);
  static StepsizeSchedule explicit_list(std::vector<double> alphas);
  static StepsizeSchedule auto_fraction(double theta);

  double at(std::size_t k, double lipschitz) const;

private:
  enum class Kind { kFixed, kList, kAuto };
  StepsizeSchedule(Kind kind, double value, std::vector<double> alphas)
      : kind_(kind), value_(value), alphas_(std::move(alphas)) {}

  Kind kind_;
  double value_;
  std::vector<double> alphas_;
};

/// Iteration cap plus a step-norm stopping test. The iteration after which
/// ||x_{k+1} - x_k|| <= step_tolerance is the last one recorded.
struct StopRule {
  std::size_t max_iters = 10000;
  double step_tolerance = 1e-12;
};

/// Line-search controls: start every iteration from alpha_init and multiply
/// by shrink (0 < shrink < 1) until the acceptance test passes.
struct BacktrackParams {
  double alpha_init = 1.0;
  double shrink = 0.5;
  std::size_t max_shrinks = 60;
};

/// One forward-backward step: prox_{alpha g}(x - alpha grad f(x)).
Vec prox_grad_step(const ObjectivePair& pair, double alpha, const Vec& x);

/// Proximal-gradient iteration with recorded stepsizes and objective values.
/// With enforce_guarantee, every stepsize must satisfy alpha <= 1/L for the
/// stored Lipschitz upper bound; violations throw GuaranteeViolation naming
/// the offending iteration.
Trajectory run_prox_grad(const ObjectivePair& pair, const Vec& x0,
                         const StepsizeSchedule& schedule, const StopRule& stop,
                         bool enforce_guarantee);

/// Proximal-gradient where each stepsize is found by shrinking from
/// alpha_init until
///   f(T(x)) <= f(x) + <grad f(x), T(x) - x> + ||T(x) - x||^2 / (2 alpha),
/// recomputing T(x) after every shrink. Throws BacktrackError when
/// max_shrinks is exhausted.
Trajectory run_prox_grad_backtracking(const ObjectivePair& pair, const Vec& x0,
                                      const BacktrackParams& params, const StopRule& stop);

/// x_{k+1} = prox_{alpha_k g}(x_k); any positive stepsizes are admissible.
Trajectory run_proximal_point(const ProxableOracle& g, const Vec& x0,
                              const StepsizeSchedule& schedule, const StopRule& stop);

/// x_{k+1} = x_k - alpha_k grad f(x_k).
Trajectory run_gradient_descent(const SmoothOracle& f, const Vec& x0,
                                const StepsizeSchedule& schedule, const StopRule& stop,
                                bool enforce_guarantee = true);
Trajectory run_gradient_descent(const SmoothOracle& f, const Vec& x0,
                                const BacktrackParams& params, const StopRule& stop);

/// y_{k+1} = P_A(x_k), x_{k+1} = P_B(y_{k+1}), realized as proximal-gradient
/// on f = half squared distance to A, g = indicator of B, alpha = 1.
/// Returns the x-sequence (including x_0) and the y-sequence (y_1 onward).
std::pair<Trajectory, Trajectory> run_alternating_projections(const ConvexSet& A,
                                                              const ConvexSet& B,
                                                              const Vec& x0,
                                                              const StopRule& stop);

/// The three equivalent realizations of x_{k+1} = (1/n) sum_i P_{C_i}(x_k):
/// the literal average, gradient descent on sum_i half squared distances
/// with alpha = 1/n, and alternating projections between the product set and
/// the diagonal in R^{d*n} (first block returned).
enum class AveragedMode { kDirect, kGradient, kProduct };

Trajectory run_averaged_projections(const std::vector<ConvexSet>& sets, const Vec& x0,
                                    const StopRule& stop, AveragedMode mode);

/// x_{k+1} = P_n(P_{n-1}(...P_1(x_k))); outer iterates only. Ships as an
/// unguaranteed baseline: its iterates carry no contraction certificate.
Trajectory run_cyclic_projections(const std::vector<ConvexSet>& sets, const Vec& x0,
                                  const StopRule& stop);

}  // namespace proxtrace
