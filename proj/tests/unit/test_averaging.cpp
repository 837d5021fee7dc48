#include <gtest/gtest.h>

#include <cmath>

#include "ssmd/averaging.hpp"
#include "ssmd/feasible_set.hpp"
#include "ssmd/random.hpp"

using namespace ssmd;

TEST(WeightedAverage, Examples) {
  WeightedAverage a;
  EXPECT_TRUE(a.empty());
  a.absorb(Vector{3, 4}, 1.0);
  EXPECT_EQ(a.x_hat(), (Vector{3, 4}));

  WeightedAverage b;
  b.absorb(Vector{0, 0}, 1.0);
  b.absorb(Vector{2, 2}, 1.0);
  EXPECT_EQ(b.x_hat(), (Vector{1, 1}));
  EXPECT_EQ(b.count(), 2u);

  WeightedAverage c;
  c.absorb(Vector{0}, 1.0);
  c.absorb(Vector{7}, 1.0);
  c.absorb(Vector{14}, 2.0 / 3.0);
  EXPECT_NEAR(c.x_hat()[0], 8.0, 1e-14);
  EXPECT_NEAR(c.total_weight(), 3.5, 1e-15);
}

TEST(WeightedAverage, Errors) {
  WeightedAverage a;
  EXPECT_THROW(a.absorb(Vector{1}, 0.0), InvalidArgument);
  EXPECT_THROW(a.absorb(Vector{1}, -2.0), InvalidArgument);
  a.absorb(Vector{1, 2}, 1.0);
  EXPECT_THROW(a.absorb(Vector{1}, 1.0), InvalidArgument);
  EXPECT_THROW(a.absorb(Vector{1, NAN}, 1.0), InvalidArgument);
}

TEST(WeightedAverage, RecursionMatchesDirectSum) {
  Rng r(21);
  for (int s = 0; s < 1000; ++s) {
    const std::size_t len = 1 + r.next_u64() % 500;
    const std::size_t n = 1 + r.next_u64() % 4;
    WeightedAverage avg;
    std::vector<long double> num(n, 0.0L);
    long double den = 0.0L;
    for (std::size_t t = 0; t < len; ++t) {
      Vector x(n);
      for (double& v : x) v = r.uniform(-10, 10);
      const double alpha = r.uniform(1e-3, 1.0);
      avg.absorb(x, alpha);
      for (std::size_t i = 0; i < n; ++i) num[i] += x[i] / static_cast<long double>(alpha);
      den += 1.0L / alpha;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double direct = static_cast<double>(num[i] / den);
      ASSERT_LE(std::abs(avg.x_hat()[i] - direct), 1e-10 * std::max(1.0, std::abs(direct))) << s;
    }
    ASSERT_NEAR(avg.total_weight(), static_cast<double>(den), 1e-12 * static_cast<double>(den));
  }
}

TEST(WeightedAverage, StaysFeasible) {
  Rng r(22);
  const auto set = FeasibleSet::capped_box(5, 1.0, 2.0);
  WeightedAverage avg;
  for (int t = 0; t < 2000; ++t) {
    Vector x(5);
    for (double& v : x) v = r.uniform(-1, 2);
    avg.absorb(project(set, x), r.uniform(0.01, 1.0));
    ASSERT_TRUE(contains(set, avg.x_hat(), 1e-8));
  }
}

TEST(Weights, Examples) {
  EXPECT_EQ(averaging_weights(Vector{1}), (Vector{1.0}));
  EXPECT_EQ(averaging_weights(Vector{1, 1, 1, 1}), (Vector{0.25, 0.25, 0.25, 0.25}));
  const auto w = averaging_weights(Vector{1, 1, 2.0 / 3.0});
  EXPECT_NEAR(w[0], 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(w[1], 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(w[2], 3.0 / 7.0, 1e-15);
  EXPECT_THROW(averaging_weights(Vector{}), InvalidArgument);
  EXPECT_THROW(averaging_weights(Vector{1, 0}), InvalidArgument);
}

TEST(Weights, PositiveAndNormalized) {
  Rng r(23);
  for (int s = 0; s < 200; ++s) {
    Vector alphas(1 + r.next_u64() % 300);
    for (double& a : alphas) a = r.uniform(1e-4, 1.0);
    const auto w = averaging_weights(alphas);
    long double sum = 0;
    for (double v : w) {
      ASSERT_GT(v, 0.0);
      sum += v;
    }
    ASSERT_NEAR(static_cast<double>(sum), 1.0, 1e-14);
  }
}

TEST(UniformAverage, Examples) {
  UniformAverage u;
  for (int t = 0; t <= 4; ++t) u.absorb(Vector{static_cast<double>(t)});
  EXPECT_EQ(u.mean(), (Vector{2.0}));
  UniformAverage c;
  for (int t = 0; t < 7; ++t) c.absorb(Vector{0.3, -1.25});
  EXPECT_NEAR(c.mean()[0], 0.3, 1e-16);
  EXPECT_EQ(c.mean()[1], -1.25);
}

TEST(UniformAverage, IntegerInputsExact) {
  Rng r(24);
  for (int s = 0; s < 1000; ++s) {
    UniformAverage u;
    const std::size_t len = 1 + r.next_u64() % 400;
    long long total = 0;
    for (std::size_t t = 0; t < len; ++t) {
      const long long v = static_cast<long long>(r.next_u64() % 2001) - 1000;
      total += v;
      u.absorb(Vector{static_cast<double>(v)});
    }
    ASSERT_EQ(u.mean()[0], static_cast<double>(total) / static_cast<double>(len));
  }
}
