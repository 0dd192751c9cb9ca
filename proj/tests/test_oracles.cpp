#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "proxtrace/analysis.hpp"
#include "proxtrace/oracles.hpp"
#include "proxtrace/sets.hpp"
#include "test_support.hpp"

using namespace proxtrace;
using testsupport::random_vec;
using testsupport::vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec central_difference_gradient(const SmoothOracle& f, const Vec& x, double h = 1e-6) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f.eval(hi) - f.eval(lo)) / (2.0 * h);
  }
  return g;
}

struct NamedSmooth {
  const char* name;
  SmoothOracle oracle;
};

std::vector<NamedSmooth> smooth_catalog() {
  std::vector<NamedSmooth> out;
  {
    Eigen::MatrixXd q(2, 2);
    q << 2, 1, 1, 2;
    out.push_back({"quadratic", quadratic(q, vec({0.5, -1.0}), 0.25)});
  }
  out.push_back({"half_sq_dist(ball)", half_squared_distance(ball(vec({0, 0}), 1.0))});
  out.push_back(
      {"half_sq_dist(box)", half_squared_distance(box(vec({-1, -1}), vec({1, 1})))});
  out.push_back({"half_sq_dist(halfspace)",
                 half_squared_distance(halfspace(vec({1, -1}), 0.2))});
  out.push_back({"sum", sum_smooth({half_squared_distance(ball(vec({0, 0}), 1.0)),
                                    half_squared_distance(halfspace(vec({0, 1}), 0.0))})});
  out.push_back({"zero", zero_smooth(2)});
  return out;
}

struct NamedProx {
  const char* name;
  ProxableOracle oracle;
  Eigen::Index dim;
};

std::vector<NamedProx> prox_catalog() {
  std::vector<NamedProx> out;
  out.push_back({"l1(1)", l1_norm(1.0), 2});
  out.push_back({"l1(0.3)", l1_norm(0.3), 3});
  out.push_back({"indicator(ball)", indicator(ball(vec({0, 0}), 1.0)), 2});
  out.push_back({"indicator(box)", indicator(box(vec({-1, -1}), vec({1, 1}))), 2});
  out.push_back({"indicator(halfspace)", indicator(halfspace(vec({1, 1}), 0.0)), 2});
  out.push_back({"zero", zero_proxable(2), 2});
  return out;
}

}  // namespace

TEST_CASE("quadratic oracle matches hand values") {
  {
    Eigen::MatrixXd q(1, 1);
    q << 1;
    const SmoothOracle f = quadratic(q, vec({0}), 0.0);
    CHECK(f.eval(vec({3})) == doctest::Approx(4.5));
    CHECK(f.grad(vec({3}))[0] == doctest::Approx(3.0));
    CHECK(f.lipschitz == doctest::Approx(1.01).epsilon(1e-9));
  }
  {
    Eigen::MatrixXd q(2, 2);
    q << 1, 0, 0, 4;
    const SmoothOracle f = quadratic(q, vec({0, 0}), 0.0);
    CHECK((f.grad(vec({1, 1})) - vec({1, 4})).norm() <= 1e-12);
    CHECK(f.lipschitz == doctest::Approx(4.04).epsilon(1e-9));
  }
  {
    Eigen::MatrixXd q(2, 2);
    q << 2, 1, 1, 2;
    const SmoothOracle f = quadratic(q, vec({0, 0}), 0.0);
    CHECK(f.lipschitz >= 3.0);
    CHECK(f.lipschitz <= 3.04);
  }
}

TEST_CASE("quadratic oracle rejects bad matrices") {
  Eigen::MatrixXd skew(2, 2);
  skew << 1, 2, 0, 1;
  CHECK_THROWS_AS(quadratic(skew, vec({0, 0}), 0.0), ConfigError);
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -2;
  CHECK_THROWS_AS(quadratic(indefinite, vec({0, 0}), 0.0), ConfigError);
  Eigen::MatrixXd q(2, 2);
  q << 1, 0, 0, 1;
  CHECK_THROWS_AS(quadratic(q, vec({0}), 0.0), ConfigError);
}

TEST_CASE("half squared distance matches hand values") {
  const SmoothOracle f = half_squared_distance(ball(vec({0, 0}), 1.0));
  CHECK(f.eval(vec({3, 4})) == doctest::Approx(8.0));
  CHECK((f.grad(vec({3, 4})) - vec({2.4, 3.2})).norm() <= 1e-12);
  CHECK(f.eval(vec({0.1, 0.2})) == 0.0);
  CHECK(f.grad(vec({0.1, 0.2})).norm() == 0.0);
  CHECK(f.lipschitz == 1.0);

  const SmoothOracle h = half_squared_distance(halfspace(vec({1}), 0.0));
  CHECK(h.grad(vec({2}))[0] == doctest::Approx(2.0));
}

TEST_CASE("sum_smooth composes evals, grads and Lipschitz bounds") {
  const ConvexSet h = halfspace(vec({1, 0}), 0.0);
  const SmoothOracle two = sum_smooth({half_squared_distance(h), half_squared_distance(h)});
  CHECK(two.lipschitz == doctest::Approx(2.0));

  // Singleton boxes: each gradient is x - c_i, so the sum is n x - sum c_i.
  const Vec c1 = vec({1, 2});
  const Vec c2 = vec({-0.5, 0.25});
  const Vec c3 = vec({0, -1});
  const SmoothOracle singletons = sum_smooth({half_squared_distance(box(c1, c1)),
                                              half_squared_distance(box(c2, c2)),
                                              half_squared_distance(box(c3, c3))});
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec x = random_vec(2, rng);
    CHECK((singletons.grad(x) - (3.0 * x - (c1 + c2 + c3))).norm() <= 1e-12);
  }

  const SmoothOracle base = half_squared_distance(ball(vec({0, 0}), 1.0));
  const SmoothOracle one = sum_smooth({base});
  const Vec probe = vec({2, -1});
  CHECK(one.eval(probe) == base.eval(probe));
  CHECK(one.grad(probe) == base.grad(probe));
  CHECK(one.lipschitz == base.lipschitz);

  CHECK_THROWS_AS(sum_smooth({}), ConfigError);
}

TEST_CASE("zero oracles behave as identities") {
  const SmoothOracle f = zero_smooth(2);
  CHECK(f.eval(vec({41, -7})) == 0.0);
  CHECK(f.grad(vec({5, 5})).norm() == 0.0);
  CHECK(f.lipschitz == 1.0);

  const ProxableOracle g = zero_proxable(1);
  CHECK(g.prox(0.1, vec({7}))[0] == 7.0);
  CHECK(g.eval(vec({7})) == 0.0);
}

TEST_CASE("indicator matches hand values") {
  const ProxableOracle g = indicator(ball(vec({0, 0}), 1.0));
  CHECK((g.prox(0.5, vec({3, 4})) - vec({0.6, 0.8})).norm() <= 1e-14);
  CHECK(g.prox(0.5, vec({3, 4})) == g.prox(7.0, vec({3, 4})));
  const Vec inside = vec({0.2, -0.4});
  CHECK(g.prox(1.0, inside) == inside);
  CHECK(g.eval(inside) == 0.0);
  CHECK(g.eval(vec({3, 4})) == kInf);
}

TEST_CASE("l1 prox is the soft threshold, cross-checked against the grid oracle") {
  const ProxableOracle g = l1_norm(1.0);
  CHECK(g.prox(1.0, vec({3}))[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.prox(1.0, vec({0.5}))[0] == 0.0);
  CHECK(g.prox(0.25, vec({0, 0})).norm() == 0.0);
  CHECK(g.eval(vec({1, -2})) == doctest::Approx(3.0));

  const Vec grid3 = brute_force_prox(g, 1.0, vec({3}), -10.0, 10.0, 1e-4);
  CHECK(std::abs(grid3[0] - g.prox(1.0, vec({3}))[0]) <= 2e-4);
  const Vec grid_half = brute_force_prox(g, 1.0, vec({0.5}), -10.0, 10.0, 1e-4);
  CHECK(std::abs(grid_half[0] - g.prox(1.0, vec({0.5}))[0]) <= 2e-4);

  CHECK_THROWS_AS(l1_norm(0.0), ConfigError);
}

TEST_CASE("prox maps are nonexpansive on 1000 random pairs") {
  std::mt19937_64 rng(5);
  for (const NamedProx& entry : prox_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec u = random_vec(entry.dim, rng);
      const Vec v = random_vec(entry.dim, rng);
      const double alpha = 0.05 + 2.0 * (trial % 7) / 7.0;
      CHECK((entry.oracle.prox(alpha, u) - entry.oracle.prox(alpha, v)).norm() <=
            (u - v).norm() + 1e-10);
    }
  }
}

TEST_CASE("gradients match central finite differences") {
  std::mt19937_64 rng(7);
  for (const NamedSmooth& entry : smooth_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = random_vec(2, rng);
      const Vec g = entry.oracle.grad(x);
      const Vec fd = central_difference_gradient(entry.oracle, x);
      CHECK((fd - g).norm() <= 1e-4 * (1.0 + g.norm()));
    }
  }
}

TEST_CASE("smooth oracles are convex and obey the quadratic upper bound") {
  std::mt19937_64 rng(9);
  for (const NamedSmooth& entry : smooth_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec x = random_vec(2, rng);
      const Vec y = random_vec(2, rng);
      const double fx = entry.oracle.eval(x);
      const double fy = entry.oracle.eval(y);
      const double linear = fx + entry.oracle.grad(x).dot(y - x);
      const double scale = 1.0 + std::abs(fx) + std::abs(fy);
      CHECK(fy >= linear - 1e-9 * scale);
      CHECK(fy <= linear + 0.5 * entry.oracle.lipschitz * (y - x).squaredNorm() +
                      1e-9 * scale);
    }
  }
}

TEST_CASE("prox outputs minimize the prox subproblem") {
  std::mt19937_64 rng(11);
  for (const NamedProx& entry : prox_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 100; ++trial) {
      const double alpha = 0.1 + (trial % 5) * 0.45;
      const Vec v = random_vec(entry.dim, rng);
      const Vec p = entry.oracle.prox(alpha, v);
      CHECK(entry.oracle.eval(p) < kInf);
      const double lhs = entry.oracle.eval(p) + (p - v).squaredNorm() / (2.0 * alpha);
      for (int inner = 0; inner < 10; ++inner) {
        Vec z = random_vec(entry.dim, rng);
        // Mix in near-feasible candidates so indicator cases are exercised.
        if (inner % 2 == 0) z = entry.oracle.prox(alpha, z);
        const double rhs = entry.oracle.eval(z) + (z - v).squaredNorm() / (2.0 * alpha);
        CHECK(lhs <= rhs + 1e-9);
      }
    }
  }
}

TEST_CASE("prox subgradient optimality certificate") {
  // (v - p)/alpha must be a subgradient of g at p = prox(alpha, v):
  // g(z) >= g(p) + <(v-p)/alpha, z - p> for all z.
  std::mt19937_64 rng(13);
  for (const NamedProx& entry : prox_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 100; ++trial) {
      const double alpha = 0.2 + (trial % 4) * 0.6;
      const Vec v = random_vec(entry.dim, rng);
      const Vec p = entry.oracle.prox(alpha, v);
      const Vec sub = (v - p) / alpha;
      const double gp = entry.oracle.eval(p);
      for (int inner = 0; inner < 10; ++inner) {
        Vec z = random_vec(entry.dim, rng);
        if (inner % 2 == 0) z = entry.oracle.prox(alpha, z);
        const double gz = entry.oracle.eval(z);
        if (gz == kInf) continue;
        CHECK(gz >= gp + sub.dot(z - p) - 1e-9);
      }
    }
  }
}

TEST_CASE("prox subproblem obeys the strong-convexity quadratic decay") {
  std::mt19937_64 rng(15);
  struct Combo {
    const char* name;
    ObjectivePair pair;
  };
  Eigen::MatrixXd q(2, 2);
  q << 2, 0.5, 0.5, 1;
  std::vector<Combo> combos;
  combos.push_back({"quadratic+l1", {quadratic(q, vec({0.3, -0.2}), 0.0), l1_norm(0.4)}});
  combos.push_back(
      {"quadratic+indicator", {quadratic(q, vec({1, 1}), 0.0), indicator(ball(vec({0, 0}), 1.0))}});
  combos.push_back({"halfsq+indicator",
                    {half_squared_distance(ball(vec({2, 2}), 0.5)),
                     indicator(box(vec({-1, -1}), vec({1, 1})))}});

  for (const Combo& combo : combos) {
    CAPTURE(combo.name);
    for (int trial = 0; trial < 50; ++trial) {
      const double alpha = 0.1 + (trial % 5) * 0.2;
      const Vec x = random_vec(2, rng);
      const Vec gx = combo.pair.f.grad(x);
      const Vec xplus = combo.pair.g.prox(alpha, x - alpha * gx);
      auto phi = [&](const Vec& z) {
        return combo.pair.g.eval(z) + gx.dot(z - x) + (z - x).squaredNorm() / (2.0 * alpha);
      };
      const double lhs_base = phi(xplus);
      for (int inner = 0; inner < 20; ++inner) {
        Vec z = random_vec(2, rng);
        if (inner % 2 == 0) z = combo.pair.g.prox(alpha, z);
        const double rhs = phi(z);
        if (rhs == kInf) continue;
        CHECK(lhs_base + (xplus - z).squaredNorm() / (2.0 * alpha) <= rhs + 1e-9);
      }
    }
  }
}

TEST_CASE("merge_dims validates oracle pairings") {
  CHECK(merge_dims(2, 2, "test") == 2);
  CHECK(merge_dims(kAnyDimension, 3, "test") == 3);
  CHECK(merge_dims(3, kAnyDimension, "test") == 3);
  CHECK(merge_dims(kAnyDimension, kAnyDimension, "test") == kAnyDimension);
  CHECK_THROWS_AS(merge_dims(2, 3, "test"), ConfigError);
}
