#pragma once

#include <functional>
#include <vector>

#include "proxtrace/core.hpp"
#include "proxtrace/sets.hpp"

namespace proxtrace {

/// Dimension tag for oracles that work in any dimension (l1, for instance).
inline constexpr Eigen::Index kAnyDimension = 0;

/// Differentiable convex function with a known Lipschitz upper bound for its
/// gradient. `lipschitz` is an upper bound on purpose: stepsize rules of the
/// form alpha <= 1/L stay valid under over-estimation, not under-estimation.
struct SmoothOracle {
  Eigen::Index dim = kAnyDimension;
  double lipschitz = 1.0;
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
};

/// Proper convex lsc function given by value and proximal map. eval may
/// return +infinity (indicator functions); prox output always has finite
/// value.
struct ProxableOracle {
  Eigen::Index dim = kAnyDimension;
  std::function<double(const Vec&)> eval;
  std::function<Vec(double alpha, const Vec&)> prox;
};

/// The two halves of a composite objective g + f over one space.
struct ObjectivePair {
  SmoothOracle f;
  ProxableOracle g;

  double objective(const Vec& x) const { return g.eval(x) + f.eval(x); }
};

/// Throws ConfigError unless the two dimensions are equal or one side is
/// dimension-agnostic. Returns the concrete dimension (or kAnyDimension).
Eigen::Index merge_dims(Eigen::Index a, Eigen::Index b, const char* what);

/// f(x) = 0.5 <x,Qx> + <b,x> + c for symmetric PSD Q. The Lipschitz bound is
/// the dominant eigenvalue estimated by 200 power iterations, inflated by 1%.
/// Throws ConfigError if Q is not symmetric or a sampled quadratic form is
/// negative.
SmoothOracle quadratic(const Eigen::MatrixXd& Q, const Vec& b, double c = 0.0);

/// f(x) = 0.5 * dist(x, C)^2; grad f = x - P_C(x); L = 1.
SmoothOracle half_squared_distance(const ConvexSet& C);

/// Pointwise sum; Lipschitz bounds add.
SmoothOracle sum_smooth(const std::vector<SmoothOracle>& oracles);

/// The zero function on R^d (lipschitz fixed at 1).
SmoothOracle zero_smooth(Eigen::Index d);

/// Indicator of C: 0 on the set (within the projection-distance membership
/// test at 1e-9 relative), +infinity outside; prox is the projection for
/// every alpha.
ProxableOracle indicator(const ConvexSet& C);

/// weight * ||x||_1 with componentwise soft-threshold prox.
ProxableOracle l1_norm(double weight);

/// The zero function with identity prox.
ProxableOracle zero_proxable(Eigen::Index d);

}  // namespace proxtrace
