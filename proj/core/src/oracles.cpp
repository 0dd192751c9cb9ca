#include "proxtrace/oracles.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace proxtrace {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMembershipTol = 1e-9;

Vec seeded_unit_vector(Eigen::Index d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(d);
  do {
    for (Eigen::Index i = 0; i < d; ++i) v[i] = u(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

double dominant_eigenvalue(const Eigen::MatrixXd& Q) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  Vec v = seeded_unit_vector(Q.rows(), rng);
  for (int it = 0; it < 200; ++it) {
    Vec w = Q * v;
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    v = w / n;
  }
  return v.dot(Q * v);
}

}  // namespace

Eigen::Index merge_dims(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a == kAnyDimension) return b;
  if (b == kAnyDimension) return a;
  if (a != b)
    throw ConfigError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                      " vs " + std::to_string(b) + ")");
  return a;
}

SmoothOracle quadratic(const Eigen::MatrixXd& Q, const Vec& b, double c) {
  if (Q.rows() != Q.cols()) throw ConfigError("quadratic: Q must be square");
  if (Q.rows() != b.size()) throw ConfigError("quadratic: Q and b dimensions differ");
  const double scale = 1.0 + Q.cwiseAbs().maxCoeff();
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ConfigError("quadratic: Q is not symmetric");

  const double lambda_max = dominant_eigenvalue(Q);
  {
    std::mt19937_64 rng(0x5851f42d4c957f2dull);
    for (int it = 0; it < 100; ++it) {
      const Vec v = seeded_unit_vector(Q.rows(), rng);
      if (v.dot(Q * v) < -1e-10 * std::max(1.0, lambda_max))
        throw ConfigError("quadratic: Q has a negative direction (not PSD)");
    }
  }

  SmoothOracle f;
  f.dim = Q.rows();
  f.lipschitz = std::max(1.01 * lambda_max, 1e-12);
  f.eval = [Q, b, c](const Vec& x) { return 0.5 * x.dot(Q * x) + b.dot(x) + c; };
  f.grad = [Q, b](const Vec& x) -> Vec { return Q * x + b; };
  return f;
}

SmoothOracle half_squared_distance(const ConvexSet& C) {
  SmoothOracle f;
  f.dim = C.dimension();
  f.lipschitz = 1.0;
  f.eval = [C](const Vec& x) { return 0.5 * (x - C.project(x)).squaredNorm(); };
  f.grad = [C](const Vec& x) -> Vec { return x - C.project(x); };
  return f;
}

SmoothOracle sum_smooth(const std::vector<SmoothOracle>& oracles) {
  if (oracles.empty()) throw ConfigError("sum_smooth: empty oracle list");
  Eigen::Index d = kAnyDimension;
  double lip = 0.0;
  for (const SmoothOracle& o : oracles) {
    d = merge_dims(d, o.dim, "sum_smooth");
    lip += o.lipschitz;
  }
  auto parts = std::make_shared<std::vector<SmoothOracle>>(oracles);
  SmoothOracle f;
  f.dim = d;
  f.lipschitz = lip;
  f.eval = [parts](const Vec& x) {
    double s = 0.0;
    for (const SmoothOracle& o : *parts) s += o.eval(x);
    return s;
  };
  f.grad = [parts](const Vec& x) -> Vec {
    Vec g = Vec::Zero(x.size());
    for (const SmoothOracle& o : *parts) g += o.grad(x);
    return g;
  };
  return f;
}

SmoothOracle zero_smooth(Eigen::Index d) {
  if (d < 1) throw ConfigError("zero_smooth: dimension must be >= 1");
  SmoothOracle f;
  f.dim = d;
  f.lipschitz = 1.0;
  f.eval = [](const Vec&) { return 0.0; };
  f.grad = [](const Vec& x) -> Vec { return Vec::Zero(x.size()); };
  return f;
}

ProxableOracle indicator(const ConvexSet& C) {
  ProxableOracle g;
  g.dim = C.dimension();
  g.eval = [C](const Vec& x) { return C.contains(x, kMembershipTol) ? 0.0 : kInf; };
  g.prox = [C](double, const Vec& v) -> Vec { return C.project(v); };
  return g;
}

ProxableOracle l1_norm(double weight) {
  if (!(weight > 0.0)) throw ConfigError("l1_norm: weight must be positive");
  ProxableOracle g;
  g.dim = kAnyDimension;
  g.eval = [weight](const Vec& x) { return weight * x.lpNorm<1>(); };
  g.prox = [weight](double alpha, const Vec& v) -> Vec {
    const double tau = alpha * weight;
    Vec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double m = std::abs(v[i]) - tau;
      out[i] = m > 0.0 ? (v[i] > 0.0 ? m : -m) : 0.0;
    }
    return out;
  };
  return g;
}

ProxableOracle zero_proxable(Eigen::Index d) {
  if (d < 1) throw ConfigError("zero_proxable: dimension must be >= 1");
  ProxableOracle g;
  g.dim = d;
  g.eval = [](const Vec&) { return 0.0; };
  g.prox = [](double, const Vec& v) -> Vec { return v; };
  return g;
}

}  // namespace proxtrace
