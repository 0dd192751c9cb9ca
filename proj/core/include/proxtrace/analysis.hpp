#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "proxtrace/core.hpp"
#include "proxtrace/oracles.hpp"

namespace proxtrace {

/// Outcome of the self-contraction check. A pair (k, m) flags the adjacent
/// comparison d(x_m, x_{k+1}) > d(x_m, x_k), i.e. the violating index triple
/// (k, k+1, m). max_violation is the largest raw excess among flagged pairs
/// and 0 when the trajectory is certified, so is_self_contracted holds
/// exactly when max_violation <= tolerance_used.
struct SelfContractionVerdict {
  bool is_self_contracted = true;
  double max_violation = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  double tolerance_used = 0.0;
};

/// Decides self-contractedness in O(K^2) by checking each adjacent pair
/// (k, k+1) against every later anchor m: the sequence is self-contracted
/// iff k -> d(x_m, x_k) is non-increasing below each anchor. A pair is
/// flagged when the raw excess exceeds tol * (1 + d(x_m, x_k)).
SelfContractionVerdict check_self_contracted(const Trajectory& t, double tol = 1e-9);

/// Largest one-step increase of the distance to z, max_k of
/// d(x_{k+1}, z) - d(x_k, z); nonpositive means Fejer-monotone toward z.
/// Returns 0 for trajectories with fewer than two points.
double check_fejer(const Trajectory& t, const Vec& z);

/// Largest positive slack of
///   (g+f)(x_{k+1}) + ||x_{k+1}-z||^2/(2a_k) <= (g+f)(z) + ||x_k-z||^2/(2a_k)
/// over every recorded step and a seeded sample of z (z_samples draws from a
/// box extending 2*diameter beyond the trajectory's bounding box, plus
/// z = x_k and z = x_K per step). 0 when no slack is positive. Requires
/// recorded stepsizes.
double audit_decrease_lemma(const ObjectivePair& pair, const Trajectory& t,
                            std::size_t z_samples, std::uint64_t seed);

/// Largest positive slack of the line-search acceptance test
///   f(x_{k+1}) <= f(x_k) + <grad f(x_k), x_{k+1}-x_k> + ||x_{k+1}-x_k||^2/(2a_k)
/// recomputed from the recorded iterates and stepsizes.
double audit_backtracking_condition(const SmoothOracle& f, const Trajectory& t);

/// Summary metrics for one recorded trajectory. The final iterate stands in
/// for the limit, hence the field name distance_x0_to_last rather than any
/// claim about x_infinity.
struct TrajectoryReport {
  double length = 0.0;
  double diameter = 0.0;
  double length_diameter_ratio = 0.0;  // 0 by convention when diameter = 0
  double distance_x0_to_last = 0.0;
  std::optional<double> fejer_max_violation;
  SelfContractionVerdict self_contraction;
};

TrajectoryReport report(const Trajectory& t, const std::optional<Vec>& solution_hint,
                        double tol = 1e-9);

/// Report serialized as a JSON document, with the audit metadata (label,
/// tolerance, seed) alongside the TrajectoryReport fields.
std::string report_to_json(const TrajectoryReport& r, std::string_view label,
                           double tolerance, std::int64_t seed);
std::string verdict_to_json(const SelfContractionVerdict& v);

/// Grid-minimizes g(z) + ||z-v||^2/(2 alpha) over [lo, hi]^d for d in {1,2}
/// and returns the best grid point. Independent of the oracle's own prox;
/// intended as a test-side reference.
Vec brute_force_prox(const ProxableOracle& g, double alpha, const Vec& v, double lo,
                     double hi, double step);

/// Partial tail sums of the step lengths: entry k holds
/// sum_{j>=k} ||x_{j+1}-x_j||, so entry 0 is the length and the last entry
/// is 0. Non-increasing by construction.
std::vector<double> tail_lengths(const Trajectory& t);

}  // namespace proxtrace
