#include "proxtrace/analysis.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <random>

namespace proxtrace {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SelfContractionVerdict check_self_contracted(const Trajectory& t, double tol) {
  if (t.empty()) throw ConfigError("check_self_contracted: empty trajectory");
  if (tol < 0.0) throw ConfigError("check_self_contracted: tolerance must be >= 0");
  SelfContractionVerdict verdict;
  verdict.tolerance_used = tol;
  for (std::size_t m = 1; m < t.size(); ++m) {
    double prev = distance(t[m], t[0]);
    for (std::size_t k = 0; k < m; ++k) {
      const double cur = distance(t[m], t[k + 1]);
      const double raw = cur - prev;
      if (raw > tol * (1.0 + prev)) {
        verdict.is_self_contracted = false;
        if (raw > verdict.max_violation) {
          verdict.max_violation = raw;
          verdict.witness = std::make_pair(k, m);
        }
      }
      prev = cur;
    }
  }
  return verdict;
}

double check_fejer(const Trajectory& t, const Vec& z) {
  if (t.empty()) throw ConfigError("check_fejer: empty trajectory");
  if (t.dimension() != z.size()) throw ConfigError("check_fejer: dimension mismatch");
  if (t.size() < 2) return 0.0;
  double worst = -kInf;
  double prev = distance(t[0], z);
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double cur = distance(t[k], z);
    worst = std::max(worst, cur - prev);
    prev = cur;
  }
  return worst;
}

double audit_decrease_lemma(const ObjectivePair& pair, const Trajectory& t,
                            std::size_t z_samples, std::uint64_t seed) {
  if (t.empty()) throw ConfigError("audit_decrease_lemma: empty trajectory");
  if (!t.has_stepsizes())
    throw ConfigError("audit_decrease_lemma: trajectory has no recorded stepsizes");

  const Eigen::Index d = t.dimension();
  Vec lo = t[0];
  Vec hi = t[0];
  for (std::size_t k = 1; k < t.size(); ++k) {
    lo = lo.cwiseMin(t[k]);
    hi = hi.cwiseMax(t[k]);
  }
  const double radius = 2.0 * diameter(t);

  std::mt19937_64 rng(seed);
  std::vector<Vec> zs;
  zs.reserve(z_samples);
  for (std::size_t s = 0; s < z_samples; ++s) {
    Vec z(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      std::uniform_real_distribution<double> u(lo[i] - radius, hi[i] + radius);
      z[i] = u(rng);
    }
    zs.push_back(std::move(z));
  }

  double worst = 0.0;
  const Vec& last = t.back();
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double alpha = t.stepsizes()[k];
    const Vec& x = t[k];
    const Vec& xp = t[k + 1];
    const double lhs_base = pair.objective(xp);
    auto slack = [&](const Vec& z) {
      const double rhs = pair.objective(z) + (x - z).squaredNorm() / (2.0 * alpha);
      if (rhs == kInf) return -kInf;
      return lhs_base + (xp - z).squaredNorm() / (2.0 * alpha) - rhs;
    };
    for (const Vec& z : zs) worst = std::max(worst, slack(z));
    worst = std::max(worst, slack(x));
    worst = std::max(worst, slack(last));
  }
  return worst;
}

double audit_backtracking_condition(const SmoothOracle& f, const Trajectory& t) {
  if (t.empty()) throw ConfigError("audit_backtracking_condition: empty trajectory");
  if (!t.has_stepsizes())
    throw ConfigError("audit_backtracking_condition: trajectory has no recorded stepsizes");
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double alpha = t.stepsizes()[k];
    const Vec& x = t[k];
    const Vec& xp = t[k + 1];
    const Vec dx = xp - x;
    const double rhs = f.eval(x) + f.grad(x).dot(dx) + dx.squaredNorm() / (2.0 * alpha);
    worst = std::max(worst, f.eval(xp) - rhs);
  }
  return worst;
}

TrajectoryReport report(const Trajectory& t, const std::optional<Vec>& solution_hint,
                        double tol) {
  if (t.empty()) throw ConfigError("report: empty trajectory");
  TrajectoryReport r;
  r.length = length(t);
  r.diameter = diameter(t);
  r.length_diameter_ratio = r.diameter > 0.0 ? r.length / r.diameter : 0.0;
  r.distance_x0_to_last = distance(t.front(), t.back());
  if (solution_hint) r.fejer_max_violation = check_fejer(t, *solution_hint);
  r.self_contraction = check_self_contracted(t, tol);
  return r;
}

namespace {

json verdict_json(const SelfContractionVerdict& v) {
  json j{{"is_self_contracted", v.is_self_contracted},
         {"max_violation", v.max_violation},
         {"tolerance_used", v.tolerance_used}};
  if (v.witness)
    j["witness"] = {v.witness->first, v.witness->second};
  else
    j["witness"] = nullptr;
  return j;
}

}  // namespace

std::string verdict_to_json(const SelfContractionVerdict& v) {
  return verdict_json(v).dump(2);
}

std::string report_to_json(const TrajectoryReport& r, std::string_view label,
                           double tolerance, std::int64_t seed) {
  json j{{"label", std::string(label)},
         {"tolerance", tolerance},
         {"seed", seed},
         {"length", r.length},
         {"diameter", r.diameter},
         {"length_diameter_ratio", r.length_diameter_ratio},
         {"distance_x0_to_last", r.distance_x0_to_last},
         {"self_contraction", verdict_json(r.self_contraction)}};
  if (r.fejer_max_violation)
    j["fejer_max_violation"] = *r.fejer_max_violation;
  else
    j["fejer_max_violation"] = nullptr;
  return j.dump(2);
}

Vec brute_force_prox(const ProxableOracle& g, double alpha, const Vec& v, double lo,
                     double hi, double step) {
  if (v.size() < 1 || v.size() > 2)
    throw ConfigError("brute_force_prox: only dimensions 1 and 2 are supported");
  if (!(lo < hi)) throw ConfigError("brute_force_prox: need lo < hi");
  if (!(step > 0.0)) throw ConfigError("brute_force_prox: need step > 0");
  if (!(alpha > 0.0)) throw ConfigError("brute_force_prox: need alpha > 0");

  const auto cells = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  auto coord = [&](std::size_t i) { return lo + static_cast<double>(i) * step; };
  auto objective = [&](const Vec& z) {
    return g.eval(z) + (z - v).squaredNorm() / (2.0 * alpha);
  };

  Vec best(v.size());
  double best_value = kInf;
  if (v.size() == 1) {
    Vec z(1);
    for (std::size_t i = 0; i <= cells; ++i) {
      z[0] = coord(i);
      const double val = objective(z);
      if (val < best_value) {
        best_value = val;
        best = z;
      }
    }
  } else {
    Vec z(2);
    for (std::size_t i = 0; i <= cells; ++i) {
      z[0] = coord(i);
      for (std::size_t j = 0; j <= cells; ++j) {
        z[1] = coord(j);
        const double val = objective(z);
        if (val < best_value) {
          best_value = val;
          best = z;
        }
      }
    }
  }
  return best;
}

std::vector<double> tail_lengths(const Trajectory& t) {
  if (t.empty()) throw ConfigError("tail_lengths: empty trajectory");
  std::vector<double> tails(t.size(), 0.0);
  for (std::size_t k = t.size() - 1; k-- > 0;)
    tails[k] = tails[k + 1] + distance(t[k + 1], t[k]);
  return tails;
}

}  // namespace proxtrace
