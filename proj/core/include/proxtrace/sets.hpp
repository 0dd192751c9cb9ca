#pragma once

#include <functional>
#include <vector>

#include "proxtrace/core.hpp"

namespace proxtrace {

/// A closed convex set given through its exact Euclidean projection.
/// Membership is decided by projection distance with a relative tolerance,
/// i.e. contains(x, tol) <=> ||x - P(x)|| <= tol * (1 + ||x||).
class ConvexSet {
public:
  using Projector = std::function<Vec(const Vec&)>;

  ConvexSet(Eigen::Index dimension, Projector project);

  Eigen::Index dimension() const { return dimension_; }
  Vec project(const Vec& x) const;
  bool contains(const Vec& x, double tol) const;

private:
  Eigen::Index dimension_;
  Projector project_;
};

/// {x : <a,x> <= b}. Throws ConfigError if a = 0.
ConvexSet halfspace(const Vec& a, double b);

/// Closed Euclidean ball. Throws ConfigError unless radius > 0.
ConvexSet ball(const Vec& center, double radius);

/// Axis-aligned box [lo, hi]; lo <= hi componentwise (equality allowed).
ConvexSet box(const Vec& lo, const Vec& hi);

/// {x : Ax = b}, projected through a dense minimum-norm least-squares solve
/// recomputed per call. Throws ConfigError if the system is inconsistent
/// (least-squares residual above 1e-8).
ConvexSet affine_subspace(const Eigen::MatrixXd& A, const Vec& b);

/// Cartesian product of n sets over R^d, living in R^{d*n} with block-major
/// layout: block i occupies coordinates [i*d, (i+1)*d).
ConvexSet product_set(std::vector<ConvexSet> sets);

/// The diagonal {(y,...,y)} of R^{d*n}; projection replaces every block with
/// the blockwise average.
ConvexSet diagonal_set(Eigen::Index d, Eigen::Index n);

}  // namespace proxtrace
