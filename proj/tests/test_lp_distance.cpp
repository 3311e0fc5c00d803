#include <gtest/gtest.h>

#include <cmath>

#include "measrep/error.hpp"
#include "measrep/lp_distance.hpp"
#include "test_support.hpp"

namespace measrep {
namespace {

constexpr BaseMetric kMetrics[] = {BaseMetric::euclidean, BaseMetric::chebyshev};

WeightedPointMeasure dirac2(double x, double y) {
  const double p[] = {x, y};
  return WeightedPointMeasure::dirac(p);
}

WeightedPointMeasure half_half(double x1, double y1, double x2, double y2) {
  const double pts[] = {x1, y1, x2, y2};
  const double w[] = {0.5, 0.5};
  return WeightedPointMeasure(2, pts, w);
}

TEST(LpFeasible, DiracPair) {
  const auto a = dirac2(0, 0);
  const auto b = dirac2(0.3, 0);
  EXPECT_TRUE(lp_feasible(a, b, 0.3));
  EXPECT_FALSE(lp_feasible(a, b, 0.29));
}

TEST(LpFeasible, IdentityAtZero) {
  const auto mu = half_half(0, 0, 1, 2);
  EXPECT_TRUE(lp_feasible(mu, mu, 0.0));
}

TEST(LpFeasible, SplitMass) {
  const auto mu = half_half(0, 0, 1, 0);
  const auto nu = dirac2(0, 0);
  EXPECT_TRUE(lp_feasible(mu, nu, 0.5));
  EXPECT_FALSE(lp_feasible(mu, nu, 0.49));
}

TEST(LpFeasible, NegativeEpsilonThrows) {
  EXPECT_THROW(lp_feasible(dirac2(0, 0), dirac2(0, 0), -0.1), DomainError);
}

TEST(LpDistance, Examples) {
  EXPECT_EQ(lp_distance(half_half(0, 0, 1, 2), half_half(1, 2, 0, 0)), 0.0);
  EXPECT_NEAR(lp_distance(dirac2(0, 0), dirac2(0.3, 0)), 0.3, 1e-15);
  EXPECT_NEAR(lp_distance(half_half(0, 0, 1, 0), dirac2(0, 0)), 0.5, 1e-15);
  EXPECT_EQ(lp_distance(dirac2(0, 0), dirac2(5, 0)), 1.0);
}

TEST(LpDistance, MetricChoiceMatters) {
  const auto a = dirac2(0, 0);
  const auto b = dirac2(0.3, 0.4);
  EXPECT_NEAR(lp_distance(a, b, BaseMetric::euclidean), 0.5, 1e-15);
  EXPECT_NEAR(lp_distance(a, b, BaseMetric::chebyshev), 0.4, 1e-15);
}

TEST(LpDistance, DimensionMismatchThrows) {
  const double p[] = {0.0};
  EXPECT_THROW(lp_distance(dirac2(0, 0), WeightedPointMeasure::dirac(p)), DomainError);
}

TEST(LpOracle, Examples) {
  EXPECT_EQ(lp_oracle(dirac2(1, 1), dirac2(1, 1)), 0.0);
  EXPECT_NEAR(lp_oracle(dirac2(0, 0), dirac2(0.3, 0)), 0.3, 1e-15);
  EXPECT_NEAR(lp_oracle(half_half(0, 0, 10, 0), dirac2(20, 0)), 1.0, 1e-15);
  EXPECT_NEAR(lp_oracle(half_half(0, 0, 10, 0), dirac2(0, 0)), 0.5, 1e-15);
}

TEST(LpOracle, RejectsLargeSupports) {
  std::vector<double> pts(2 * 9);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<double>(i);
  const std::vector<double> w(9, 1.0 / 9);
  const WeightedPointMeasure big(2, pts, w);
  EXPECT_THROW(lp_oracle(big, big), DomainError);
}

TEST(LpDistance, MatchesOracle) {
  testing::Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    const auto dim = static_cast<std::size_t>(testing::uniform_int(rng, 1, 3));
    const auto mu = testing::random_measure(rng, dim, 4, 0.6);
    const auto nu = testing::random_measure(rng, dim, 4, 0.6);
    for (BaseMetric metric : kMetrics) {
      EXPECT_NEAR(lp_distance(mu, nu, metric), lp_oracle(mu, nu, metric), 1e-12) << "case " << t;
    }
  }
}

TEST(LpDistance, MetricAxioms) {
  testing::Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto a = testing::random_measure(rng, 2, 6, 0.7);
    const auto b = testing::random_measure(rng, 2, 6, 0.7);
    const auto c = testing::random_measure(rng, 2, 6, 0.7);
    for (BaseMetric metric : kMetrics) {
      const double ab = lp_distance(a, b, metric);
      EXPECT_EQ(ab, lp_distance(b, a, metric));
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(ab, 1.0);
      EXPECT_LE(lp_distance(a, c, metric), ab + lp_distance(b, c, metric) + 1e-9);
      EXPECT_EQ(lp_distance(a, a, metric), 0.0);
      EXPECT_EQ(ab == 0.0, measure_equal(a, b, 1e-12));
    }
  }
}

TEST(LpFeasible, MonotoneInEpsilon) {
  testing::Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_measure(rng, 2, 5);
    const auto b = testing::random_measure(rng, 2, 5);
    bool seen = false;
    for (double eps = 0.0; eps <= 1.0; eps += 0.01) {
      const bool f = lp_feasible(a, b, eps);
      EXPECT_TRUE(!seen || f) << "eps " << eps;
      seen = seen || f;
    }
    EXPECT_TRUE(lp_feasible(a, b, lp_distance(a, b)));
  }
}

TEST(Hausdorff, Examples) {
  MeasureSet x(2), y(2), z(2);
  x.insert(dirac2(0, 0));
  y.insert(dirac2(0.3, 0));
  z.insert(dirac2(0, 0));
  z.insert(dirac2(1, 0));
  EXPECT_EQ(hausdorff(x, x), 0.0);
  EXPECT_NEAR(hausdorff(x, y), 0.3, 1e-15);
  EXPECT_EQ(hausdorff(z, x), 1.0);
  EXPECT_THROW(hausdorff(MeasureSet(2), x), DomainError);
}

TEST(Hausdorff, ParallelMatchesReferenceBitwise) {
  testing::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    MeasureSet x(2), y(2);
    const int nx = testing::uniform_int(rng, 1, 25);
    const int ny = testing::uniform_int(rng, 1, 25);
    for (int i = 0; i < nx; ++i) x.insert(testing::random_measure(rng, 2, 4));
    for (int i = 0; i < ny; ++i) y.insert(testing::random_measure(rng, 2, 4));
    for (BaseMetric metric : kMetrics) {
      const double fast = hausdorff(x, y, metric);
      EXPECT_EQ(fast, hausdorff_reference(x, y, metric));
      EXPECT_EQ(fast, hausdorff(y, x, metric));
      EXPECT_LE(fast, 1.0);
    }
  }
}

TEST(MemberDistance, ZeroForNumericallyEqualMeasures) {
  const auto a = half_half(0.1, 0.2, 0.3, 0.4);
  const auto b = half_half(0.1 + 1e-14, 0.2, 0.3, 0.4 - 1e-14);
  EXPECT_EQ(member_distance(a, b, BaseMetric::euclidean), 0.0);
}

TEST(CouplingLpBound, Examples) {
  const std::vector<std::vector<double>> x{{0.0}};
  const std::vector<std::vector<double>> y{{1.0}};
  const double w1[] = {1.0};
  EXPECT_EQ(coupling_lp_bound(x, x, w1), 0.0);
  EXPECT_DOUBLE_EQ(coupling_lp_bound(x, y, w1), 1.0);

  // tau = max(0.25, 0.1)
  const std::vector<std::vector<double>> x2{{0.0, 0.0}, {0.0, 0.0}};
  const std::vector<std::vector<double>> y2{{0.5, 0.2}, {0.0, 0.0}};
  const double w2[] = {0.5, 0.5};
  EXPECT_NEAR(coupling_lp_bound(x2, y2, w2), 0.5 * std::pow(2.0, 0.75), 1e-15);
  EXPECT_NEAR(0.5 * std::pow(2.0, 0.75), 0.8409, 1e-4);

  const double w_short[] = {1.0};
  EXPECT_THROW(coupling_lp_bound(x2, y2, w_short), DomainError);
}

TEST(CouplingLpBound, BoundsPushforwardDistance) {
  testing::Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const int m = testing::uniform_int(rng, 1, 6);
    const int k = testing::uniform_int(rng, 1, 3);
    const double spread = testing::uniform(rng, 0.0, 0.5);
    std::vector<std::vector<double>> xs, ys;
    std::vector<double> xp, yp;
    for (int i = 0; i < m; ++i) {
      std::vector<double> xv, yv;
      for (int c = 0; c < k; ++c) {
        xv.push_back(testing::uniform(rng, -1, 1));
        yv.push_back(xv.back() + testing::uniform(rng, -spread, spread));
      }
      xp.insert(xp.end(), xv.begin(), xv.end());
      yp.insert(yp.end(), yv.begin(), yv.end());
      xs.push_back(std::move(xv));
      ys.push_back(std::move(yv));
    }
    const auto w = testing::random_weights(rng, static_cast<std::size_t>(m));
    const WeightedPointMeasure law_x(static_cast<std::size_t>(k), xp, w);
    const WeightedPointMeasure law_y(static_cast<std::size_t>(k), yp, w);
    const double bound = coupling_lp_bound(xs, ys, w);
    for (BaseMetric metric : kMetrics) EXPECT_LE(lp_distance(law_x, law_y, metric), bound);
  }
}

}  // namespace
}  // namespace measrep
