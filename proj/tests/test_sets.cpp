#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "proxtrace/oracles.hpp"
#include "proxtrace/sets.hpp"
#include "test_support.hpp"

using namespace proxtrace;
using testsupport::random_vec;
using testsupport::vec;

namespace {

std::vector<ConvexSet> catalog_sets() {
  std::vector<ConvexSet> sets;
  sets.push_back(halfspace(vec({1, 0}), 0.0));
  sets.push_back(halfspace(vec({1, 1}), 0.5));
  sets.push_back(ball(vec({0, 0}), 1.0));
  sets.push_back(ball(vec({1, -2}), 0.3));
  sets.push_back(box(vec({-1, -1}), vec({1, 1})));
  sets.push_back(box(vec({0.5, 0.5}), vec({0.5, 2.0})));
  {
    Eigen::MatrixXd a(1, 2);
    a << 1, -1;
    sets.push_back(affine_subspace(a, vec({0})));
  }
  {
    Eigen::MatrixXd a(2, 3);
    a << 1, 0, 1, 0, 1, -1;
    sets.push_back(affine_subspace(a, vec({1, 0})));
  }
  sets.push_back(product_set({ball(vec({0, 0}), 1.0), box(vec({-1, -1}), vec({1, 1}))}));
  sets.push_back(diagonal_set(2, 3));
  return sets;
}

}  // namespace

TEST_CASE("halfspace projection matches hand values") {
  const ConvexSet h = halfspace(vec({1, 0}), 0.0);
  CHECK((h.project(vec({2, 3})) - vec({0, 3})).norm() == doctest::Approx(0.0));
  const Vec interior = vec({-1, 5});
  CHECK(h.project(interior) == interior);
  const ConvexSet diag = halfspace(vec({1, 1}), 0.0);
  CHECK((diag.project(vec({1, 1})) - vec({0, 0})).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(halfspace(vec({0, 0}), 1.0), ConfigError);
}

TEST_CASE("ball projection matches hand values") {
  const ConvexSet b = ball(vec({0, 0}), 1.0);
  CHECK((b.project(vec({3, 4})) - vec({0.6, 0.8})).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(b.project(vec({0, 0})) == vec({0, 0}));
  const ConvexSet shifted = ball(vec({1, 0}), 1.0);
  CHECK((shifted.project(vec({3, 0})) - vec({2, 0})).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(ball(vec({0}), 0.0), ConfigError);
}

TEST_CASE("box projection clamps componentwise") {
  const ConvexSet b = box(vec({0, 0}), vec({1, 1}));
  CHECK((b.project(vec({2, 0.5})) - vec({1, 0.5})).norm() == 0.0);
  CHECK(b.project(vec({0.3, 0.7})) == vec({0.3, 0.7}));
  const ConvexSet wide = box(vec({-1, -1}), vec({1, 1}));
  CHECK((wide.project(vec({-3, -3})) - vec({-1, -1})).norm() == 0.0);
  CHECK_THROWS_AS(box(vec({1, 0}), vec({0, 1})), ConfigError);
  CHECK(box(vec({0.5}), vec({0.5})).project(vec({9}))[0] == 0.5);
}

TEST_CASE("affine subspace projection matches hand values") {
  Eigen::MatrixXd a(1, 2);
  a << 1, -1;
  const ConvexSet line = affine_subspace(a, vec({0}));
  CHECK((line.project(vec({1, 0})) - vec({0.5, 0.5})).norm() ==
        doctest::Approx(0.0).epsilon(1e-12));
  const Vec member = vec({2, 2});
  CHECK((line.project(member) - member).norm() <= 1e-12);

  // Projecting onto a hyperplane agrees with the halfspace formula for
  // points on the violating side.
  std::mt19937_64 rng(3);
  const Vec normal = vec({0.3, -1.2, 0.4});
  Eigen::MatrixXd row(1, 3);
  row << normal[0], normal[1], normal[2];
  const ConvexSet plane = affine_subspace(row, vec({0.7}));
  const ConvexSet half = halfspace(normal, 0.7);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec x = random_vec(3, rng);
    if (normal.dot(x) <= 0.7) continue;
    CHECK((plane.project(x) - half.project(x)).norm() <= 1e-10);
  }
}

TEST_CASE("affine subspace rejects inconsistent systems") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 0, 1, 0;
  CHECK_THROWS_AS(affine_subspace(a, vec({0, 1})), ConfigError);
  CHECK_NOTHROW(affine_subspace(a, vec({1, 1})));
}

TEST_CASE("product set projects blockwise") {
  const ConvexSet single = product_set({ball(vec({0, 0}), 1.0)});
  CHECK((single.project(vec({3, 4})) - vec({0.6, 0.8})).norm() <= 1e-14);

  const ConvexSet two = product_set({ball(vec({0, 0}), 1.0), ball(vec({0, 0}), 1.0)});
  const Vec y = vec({3, 4, 0, 0});
  CHECK((two.project(y) - vec({0.6, 0.8, 0, 0})).norm() <= 1e-14);

  const Vec member = vec({0.1, 0.2, -0.5, 0});
  CHECK((two.project(member) - member).norm() == 0.0);

  CHECK_THROWS_AS(product_set({}), ConfigError);
  CHECK_THROWS_AS(product_set({ball(vec({0}), 1.0), ball(vec({0, 0}), 1.0)}), ConfigError);
}

TEST_CASE("diagonal set replaces blocks with their average") {
  const ConvexSet d12 = diagonal_set(1, 2);
  CHECK((d12.project(vec({0, 2})) - vec({1, 1})).norm() == 0.0);
  CHECK(d12.project(vec({0.5, 0.5})) == vec({0.5, 0.5}));
  const ConvexSet d13 = diagonal_set(1, 3);
  CHECK((d13.project(vec({0, 1, 5})) - vec({2, 2, 2})).norm() == 0.0);
}

TEST_CASE("diagonal projection is the grid-verified least-squares average") {
  // Exhaustive 1D check that the average minimizes sum_i (y_i - t)^2.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec y = random_vec(2, rng, -2.0, 2.0);
    double best_t = -10.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (double t = -10.0; t <= 10.0; t += 1e-4) {
      const double val = (y[0] - t) * (y[0] - t) + (y[1] - t) * (y[1] - t);
      if (val < best_val) {
        best_val = val;
        best_t = t;
      }
    }
    const Vec projected = diagonal_set(1, 2).project(y);
    CHECK(projected[0] == doctest::Approx(best_t).epsilon(2e-4));
    CHECK(projected[0] == projected[1]);
  }
}

TEST_CASE("catalog sets satisfy idempotence, membership and the variational inequality") {
  std::mt19937_64 rng(7);
  for (const ConvexSet& s : catalog_sets()) {
    const Eigen::Index d = s.dimension();
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = random_vec(d, rng);
      const Vec p = s.project(x);
      CHECK((s.project(p) - p).norm() <= 1e-10);
      CHECK(s.contains(p, 1e-8));
      // Members are produced by projecting fresh random points.
      for (int inner = 0; inner < 10; ++inner) {
        const Vec c = s.project(random_vec(d, rng));
        CHECK((x - p).dot(c - p) <= 1e-9);
      }
    }
  }
}

TEST_CASE("catalog projections are nonexpansive") {
  std::mt19937_64 rng(9);
  for (const ConvexSet& s : catalog_sets()) {
    const Eigen::Index d = s.dimension();
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec x = random_vec(d, rng);
      const Vec y = random_vec(d, rng);
      CHECK((s.project(x) - s.project(y)).norm() <= (x - y).norm() + 1e-10);
    }
  }
}

TEST_CASE("indicator prox agrees with projection exactly") {
  std::mt19937_64 rng(11);
  for (const ConvexSet& s : catalog_sets()) {
    const ProxableOracle g = indicator(s);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec x = random_vec(s.dimension(), rng);
      CHECK(g.prox(0.37, x) == s.project(x));
      CHECK(g.prox(5.0, x) == s.project(x));
    }
  }
}

TEST_CASE("projection rejects dimension mismatches") {
  const ConvexSet b = ball(vec({0, 0}), 1.0);
  CHECK_THROWS_AS(b.project(vec({1})), ConfigError);
}
