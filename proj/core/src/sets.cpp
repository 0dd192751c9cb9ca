#include "proxtrace/sets.hpp"

#include <cmath>
#include <utility>

namespace proxtrace {

ConvexSet::ConvexSet(Eigen::Index dimension, Projector project)
    : dimension_(dimension), project_(std::move(project)) {
  if (dimension_ < 1) throw ConfigError("convex set: dimension must be >= 1");
  if (!project_) throw ConfigError("convex set: missing projector");
}

Vec ConvexSet::project(const Vec& x) const {
  if (x.size() != dimension_)
    throw ConfigError("project: point dimension " + std::to_string(x.size()) +
                      " does not match set dimension " + std::to_string(dimension_));
  return project_(x);
}

bool ConvexSet::contains(const Vec& x, double tol) const {
  return distance(x, project(x)) <= tol * (1.0 + x.norm());
}

ConvexSet halfspace(const Vec& a, double b) {
  const double nsq = a.squaredNorm();
  if (!(nsq > 0.0)) throw ConfigError("halfspace: zero normal vector");
  return ConvexSet(a.size(), [a, b, nsq](const Vec& x) -> Vec {
    const double excess = a.dot(x) - b;
    if (excess <= 0.0) return x;
    return x - (excess / nsq) * a;
  });
}

ConvexSet ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw ConfigError("ball: radius must be positive");
  return ConvexSet(center.size(), [center, radius](const Vec& x) -> Vec {
    const Vec r = x - center;
    const double n = r.norm();
    if (n <= radius) return x;
    return center + (radius / n) * r;
  });
}

ConvexSet box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size()) throw ConfigError("box: bound dimensions differ");
  if (((hi - lo).array() < 0.0).any()) throw ConfigError("box: lo exceeds hi");
  return ConvexSet(lo.size(), [lo, hi](const Vec& x) -> Vec {
    return x.cwiseMax(lo).cwiseMin(hi);
  });
}

ConvexSet affine_subspace(const Eigen::MatrixXd& A, const Vec& b) {
  if (A.rows() != b.size()) throw ConfigError("affine: A and b row counts differ");
  if (A.cols() < 1) throw ConfigError("affine: A must have at least one column");
  {
    const Vec candidate = A.completeOrthogonalDecomposition().solve(b);
    if ((A * candidate - b).norm() > 1e-8)
      throw ConfigError("affine: system Ax = b is inconsistent");
  }
  return ConvexSet(A.cols(), [A, b](const Vec& x) -> Vec {
    // Minimum-norm solve gives the pseudoinverse applied to the residual,
    // which lies in range(A) because the system is consistent.
    const Vec correction = A.completeOrthogonalDecomposition().solve(A * x - b);
    return x - correction;
  });
}

ConvexSet product_set(std::vector<ConvexSet> sets) {
  if (sets.empty()) throw ConfigError("product_set: empty set list");
  const Eigen::Index d = sets.front().dimension();
  for (const ConvexSet& s : sets)
    if (s.dimension() != d)
      throw ConfigError("product_set: component sets must share one dimension");
  const Eigen::Index n = static_cast<Eigen::Index>(sets.size());
  auto shared = std::make_shared<std::vector<ConvexSet>>(std::move(sets));
  return ConvexSet(d * n, [shared, d, n](const Vec& y) -> Vec {
    Vec out(d * n);
    for (Eigen::Index i = 0; i < n; ++i)
      out.segment(i * d, d) = (*shared)[static_cast<std::size_t>(i)].project(y.segment(i * d, d));
    return out;
  });
}

ConvexSet diagonal_set(Eigen::Index d, Eigen::Index n) {
  if (d < 1 || n < 1) throw ConfigError("diagonal_set: d and n must be >= 1");
  return ConvexSet(d * n, [d, n](const Vec& y) -> Vec {
    Vec mean = Vec::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) mean += y.segment(i * d, d);
    mean /= static_cast<double>(n);
    Vec out(d * n);
    for (Eigen::Index i = 0; i < n; ++i) out.segment(i * d, d) = mean;
    return out;
  });
}

}  // namespace proxtrace
