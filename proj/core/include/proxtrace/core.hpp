#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "proxtrace/errors.hpp"

namespace proxtrace {

/// A point in d-dimensional Euclidean space. Coordinates are doubles and
/// must be finite; the dimension is fixed per problem instance.
using Vec = Eigen::VectorXd;

bool all_finite(const Vec& x);

/// Euclidean distance. Throws ConfigError on dimension mismatch.
double distance(const Vec& p, const Vec& q);

/// An immutable iterate sequence x_0..x_K with optional per-step metadata.
/// Stepsizes, when present, have one entry per transition (K entries);
/// objective values have one entry per point and may be +infinity.
class Trajectory {
public:
  Trajectory(std::string label, std::vector<Vec> points,
             std::vector<double> stepsizes = {},
             std::vector<double> objective_values = {});

  const std::string& label() const { return label_; }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<double>& stepsizes() const { return stepsizes_; }
  const std::vector<double>& objective_values() const { return objective_values_; }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  Eigen::Index dimension() const { return points_.empty() ? 0 : points_.front().size(); }
  const Vec& operator[](std::size_t k) const { return points_[k]; }
  const Vec& front() const { return points_.front(); }
  const Vec& back() const { return points_.back(); }

  bool has_stepsizes() const { return !stepsizes_.empty(); }
  bool has_objective_values() const { return !objective_values_.empty(); }

  /// New trajectory holding points 0..count-1 with matching metadata.
  Trajectory prefix(std::size_t count) const;

private:
  std::string label_;
  std::vector<Vec> points_;
  std::vector<double> stepsizes_;
  std::vector<double> objective_values_;
};

/// Runners append here and freeze once; Trajectory itself never mutates.
class TrajectoryBuilder {
public:
  explicit TrajectoryBuilder(std::string label) : label_(std::move(label)) {}

  TrajectoryBuilder& start(Vec x0);
  TrajectoryBuilder& start(Vec x0, double objective);
  TrajectoryBuilder& append(Vec x);
  TrajectoryBuilder& append(Vec x, double stepsize);
  TrajectoryBuilder& append(Vec x, double stepsize, double objective);

  std::size_t size() const { return points_.size(); }
  const Vec& back() const { return points_.back(); }

  Trajectory freeze() &&;

private:
  std::string label_;
  std::vector<Vec> points_;
  std::vector<double> stepsizes_;
  std::vector<double> objective_values_;
};

/// Sum of consecutive step distances. Throws ConfigError on an empty
/// trajectory; a single point has length 0.
double length(const Trajectory& t);

/// Largest pairwise distance, by exhaustive O(K^2) scan.
double diameter(const Trajectory& t);

/// Trajectory CSV: header `k,x0,..,x{d-1}[,alpha][,objective]`, one row per
/// iterate, 17 significant digits. Row k's alpha is the stepsize that
/// produced x_k, so the alpha cell of row 0 is empty.
void write_trajectory_csv(const Trajectory& t, std::ostream& out);
void write_trajectory_csv(const Trajectory& t, const std::filesystem::path& path);
Trajectory read_trajectory_csv(std::istream& in, std::string label = "csv");
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// 17-significant-digit decimal rendering (round-trips doubles exactly).
std::string format_double(double v);

}  // namespace proxtrace
