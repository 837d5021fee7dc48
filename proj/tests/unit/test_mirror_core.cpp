#include <gtest/gtest.h>

#include <cmath>
#include <utility>

#include "ssmd/feasible_set.hpp"
#include "ssmd/mirror_map.hpp"
#include "ssmd/prox.hpp"
#include "ssmd/random.hpp"

using namespace ssmd;

namespace {

Vector random_point(Rng& r, std::size_t n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = r.uniform(lo, hi);
  return v;
}

Vector random_simplex_point(Rng& r, std::size_t n) {
  Vector v(n);
  double s = 0;
  for (double& x : v) s += (x = 0.05 + r.uniform());
  for (double& x : v) x /= s;
  return v;
}

}  // namespace

TEST(MirrorMap, Invariants) {
  const auto e = MirrorMap::euclidean();
  EXPECT_EQ(e.mu_w(), 1.0);
  EXPECT_TRUE(e.satisfies_quadratic_upper_bound());
  const auto h = MirrorMap::negative_entropy();
  EXPECT_GT(h.mu_w(), 0.0);
  EXPECT_FALSE(h.satisfies_quadratic_upper_bound());
}

TEST(Bregman, Examples) {
  const auto e = MirrorMap::euclidean();
  EXPECT_EQ(bregman(e, Vector{1, 2}, Vector{1, 2}), 0.0);
  EXPECT_DOUBLE_EQ(bregman(e, Vector{0, 0}, Vector{3, 4}), 12.5);
  const double kl = bregman(MirrorMap::negative_entropy(), Vector{0.5, 0.5}, Vector{0.9, 0.1});
  EXPECT_NEAR(kl, 0.368064, 1e-6);
  EXPECT_NEAR(kl, 0.9 * std::log(1.8) + 0.1 * std::log(0.2), 1e-15);
}

TEST(Bregman, Errors) {
  const auto e = MirrorMap::euclidean();
  EXPECT_THROW(bregman(e, Vector{1, 2}, Vector{1}), InvalidArgument);
  const auto h = MirrorMap::negative_entropy();
  EXPECT_THROW(bregman(h, Vector{0.0, 1.0}, Vector{0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(bregman(h, Vector{0.5, 0.5}, Vector{-0.1, 1.1}), InvalidArgument);
}

TEST(Bregman, StrongConvexityLowerBound) {
  Rng r(1);
  for (const auto& map : {MirrorMap::euclidean(), MirrorMap::negative_entropy()}) {
    for (int i = 0; i < 1000; ++i) {
      const Vector x = random_simplex_point(r, 4);
      const Vector z = random_simplex_point(r, 4);
      EXPECT_GE(bregman(map, x, z), 0.5 * map.mu_w() * dist2_sq(x, z) - 1e-12);
    }
  }
}

TEST(Bregman, ThreePointIdentity) {
  Rng r(2);
  for (const auto& map : {MirrorMap::euclidean(), MirrorMap::negative_entropy()}) {
    for (int i = 0; i < 500; ++i) {
      const Vector x = random_simplex_point(r, 5);
      const Vector y = random_simplex_point(r, 5);
      const Vector z = random_simplex_point(r, 5);
      const Vector gx = potential_gradient(map, x);
      const Vector gy = potential_gradient(map, y);
      double inner = 0;
      for (std::size_t j = 0; j < 5; ++j) inner += (gy[j] - gx[j]) * (z[j] - y[j]);
      EXPECT_NEAR(bregman(map, x, z) - bregman(map, y, z), bregman(map, x, y) + inner, 1e-9);
    }
  }
}

TEST(QuadraticUpperBound, Examples) {
  Rng r(3);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int i = 0; i < 1000; ++i) pairs.emplace_back(random_point(r, 5, 0, 10), random_point(r, 5, 0, 10));
  EXPECT_TRUE(check_quadratic_upper_bound(MirrorMap::euclidean(), pairs));

  const std::vector<std::pair<Vector, Vector>> skewed = {{Vector{0.01, 0.99}, Vector{0.99, 0.01}}};
  EXPECT_FALSE(check_quadratic_upper_bound(MirrorMap::negative_entropy(), skewed));
  EXPECT_NEAR(bregman(MirrorMap::negative_entropy(), skewed[0].first, skewed[0].second), 4.50, 0.01);

  EXPECT_TRUE(check_quadratic_upper_bound(MirrorMap::euclidean(), std::vector<std::pair<Vector, Vector>>{}));
}

TEST(Prox, ZeroStepKeepsPoint) {
  const auto set = FeasibleSet::capped_box(3, 10, 10);
  const Vector x{1, 2, 3};
  const Vector p = prox_step(MirrorMap::euclidean(), set, x, Vector{5, -4, 3}, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], x[i], 1e-9);
}

TEST(Prox, InteriorEuclideanStep) {
  const auto p = prox_step(MirrorMap::euclidean(), FeasibleSet::capped_box(2, 10, 10), Vector{1, 1}, Vector{1, 0}, 0.5);
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 1.0);
}

TEST(Prox, EntropyMultiplicativeUpdate) {
  const auto p = prox_step(MirrorMap::negative_entropy(), FeasibleSet::simplex(2), Vector{0.5, 0.5}, Vector{1, 0},
                           std::log(2.0));
  EXPECT_NEAR(p[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(p[1], 2.0 / 3.0, 1e-15);
}

TEST(Prox, Errors) {
  const auto box = FeasibleSet::capped_box(2, 10, 10);
  const auto e = MirrorMap::euclidean();
  EXPECT_THROW(prox_step(e, box, Vector{11, 0}, Vector{0, 0}, 1.0), InvalidArgument);
  EXPECT_THROW(prox_step(e, box, Vector{1, 1}, Vector{0, 0}, 0.0), InvalidArgument);
  EXPECT_THROW(prox_step(e, box, Vector{1, 1}, Vector{0}, 1.0), InvalidArgument);
  EXPECT_THROW(prox_step(MirrorMap::negative_entropy(), box, Vector{1, 1}, Vector{0, 0}, 1.0), InvalidArgument);
}

TEST(Prox, EuclideanEqualsProjection) {
  Rng r(4);
  const auto set = FeasibleSet::capped_box(6, 2.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const Vector x = project(set, random_point(r, 6, 0, 2));
    const Vector g = random_point(r, 6, -5, 5);
    const double alpha = r.uniform(0.01, 2.0);
    const Vector p = prox_step(MirrorMap::euclidean(), set, x, g, alpha);
    const Vector q = project(set, axpy(x, -alpha, g));
    for (std::size_t j = 0; j < 6; ++j) ASSERT_NEAR(p[j], q[j], 1e-10);
  }
}

TEST(Prox, OptimalityAgainstPerturbations) {
  Rng r(5);
  auto objective = [](const MirrorMap& map, const Vector& x, const Vector& g, double alpha, const Vector& z) {
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += g[j] * (z[j] - x[j]);
    return alpha * s + bregman(map, x, z);
  };
  struct Case {
    MirrorMap map;
    FeasibleSet set;
  };
  const Case cases[] = {{MirrorMap::euclidean(), FeasibleSet::capped_box(4, 1.0, 2.0)},
                        {MirrorMap::euclidean(), FeasibleSet::simplex(4)},
                        {MirrorMap::negative_entropy(), FeasibleSet::simplex(4)}};
  for (const auto& c : cases) {
    for (int t = 0; t < 20; ++t) {
      const Vector x = c.set.kind() == FeasibleSet::Kind::Simplex ? random_simplex_point(r, 4)
                                                                  : project(c.set, random_point(r, 4, 0, 1));
      const Vector g = random_point(r, 4, -3, 3);
      const double alpha = r.uniform(0.05, 1.0);
      const Vector p = prox_step(c.map, c.set, x, g, alpha);
      ASSERT_TRUE(contains(c.set, p, 1e-9));
      const double best = objective(c.map, x, g, alpha, p);
      for (int k = 0; k < 100; ++k) {
        const Vector z = c.set.kind() == FeasibleSet::Kind::Simplex ? random_simplex_point(r, 4)
                                                                    : project(c.set, random_point(r, 4, 0, 1));
        EXPECT_LE(best, objective(c.map, x, g, alpha, z) + 1e-9);
      }
    }
  }
}
