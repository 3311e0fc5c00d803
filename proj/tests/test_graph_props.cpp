#include <gtest/gtest.h>

#include <cmath>

#include "measrep/error.hpp"
#include "measrep/graph_props.hpp"
#include "test_support.hpp"

namespace measrep {
namespace {

Matrix example_3x3() {
  Matrix a(3, 3);
  a << 0, 1, 1, 0, 1, 0, 1, 1, 0;
  return a;
}

TEST(Jacobi, KnownSpectra) {
  const auto k3 = jacobi_eigen(adjacency_matrix(complete_graph(3)));
  ASSERT_EQ(k3.values.size(), 3u);
  EXPECT_NEAR(k3.values[0], -1.0, 1e-12);
  EXPECT_NEAR(k3.values[1], -1.0, 1e-12);
  EXPECT_NEAR(k3.values[2], 2.0, 1e-12);
  const auto c4 = jacobi_eigen(adjacency_matrix(cycle_graph(4)));
  const std::vector<double> expected{-2, 0, 0, 2};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(c4.values[i], expected[i], 1e-12);
  EXPECT_THROW(jacobi_eigen(example_3x3()), DomainError);
}

TEST(Jacobi, ReconstructsInput) {
  testing::Rng rng(41);
  for (int t = 0; t < 30; ++t) {
    const int n = testing::uniform_int(rng, 1, 8);
    const Matrix a = testing::random_symmetric(rng, n);
    const auto e = jacobi_eigen(a);
    const Vector lambda = Eigen::Map<const Vector>(e.values.data(), n);
    EXPECT_LT((e.vectors * lambda.asDiagonal() * e.vectors.transpose() - a).norm(), 1e-11 * (1 + a.norm()));
    EXPECT_LT((e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)).norm(), 1e-12);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST(LineSupport, Examples) {
  const auto k3 = adjacency(complete_graph(3));
  const auto lambda = line_support_check(generate_measure(k3, Vector::Ones(3)), 1e-9);
  ASSERT_TRUE(lambda);
  EXPECT_DOUBLE_EQ(*lambda, 2.0);
  EXPECT_FALSE(line_support_check(generate_measure(k3, Vector::Unit(3, 0)), 1e-9));
  const auto zero = MeasuredMatrix::uniform(Matrix::Zero(3, 3));
  const auto l0 = line_support_check(generate_measure(zero, Eigen::Vector3d(0.3, -0.2, 0.9)), 1e-9);
  ASSERT_TRUE(l0);
  EXPECT_EQ(*l0, 0.0);
  // x = 0 with y != 0 can never lie on a line through the origin
  EXPECT_FALSE(line_support_check(generate_measure(k3, Eigen::Vector3d(0.0, 1.0, 1.0)), 1e-9));
}

TEST(LineSupport, DetectsEveryEigenpair) {
  testing::Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    const int n = testing::uniform_int(rng, 1, 6);
    const auto m = MeasuredMatrix::uniform(testing::random_symmetric(rng, n));
    const auto e = jacobi_eigen(m.matrix());
    for (int j = 0; j < n; ++j) {
      const auto lambda = line_support_check(generate_measure(m, e.vectors.col(j)), 1e-9);
      ASSERT_TRUE(lambda) << "pair " << j;
      EXPECT_LT(std::abs(*lambda - e.values[static_cast<std::size_t>(j)]), 1e-8);
    }
    for (int s = 0; s < 20; ++s) {
      const auto lambda = line_support_check(generate_measure(m, testing::random_vector(rng, n)), 1e-9);
      if (!lambda) continue;
      double gap = 1e300;
      for (double v : e.values) gap = std::min(gap, std::abs(v - *lambda));
      EXPECT_LT(gap, 1e-6);
    }
  }
}

TEST(RowSums, Examples) {
  const auto k3 = row_sums_from_measure(adjacency(complete_graph(3)));
  ASSERT_EQ(k3.size(), 1u);
  EXPECT_EQ(k3[0].value, 2.0);
  EXPECT_DOUBLE_EQ(k3[0].weight, 1.0);

  const auto ex = row_sums_from_measure(MeasuredMatrix::uniform(example_3x3()));
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(ex[0].value, 1.0);
  EXPECT_NEAR(ex[0].weight, 1.0 / 3, 1e-15);
  EXPECT_EQ(ex[1].value, 2.0);
  EXPECT_NEAR(ex[1].weight, 2.0 / 3, 1e-15);

  const auto star = row_sums_from_measure(adjacency(star_graph(4)));
  ASSERT_EQ(star.size(), 2u);
  EXPECT_EQ(star[0].value, 1.0);
  EXPECT_DOUBLE_EQ(star[0].weight, 0.75);
  EXPECT_EQ(star[1].value, 3.0);
  EXPECT_DOUBLE_EQ(star[1].weight, 0.25);
}

TEST(RowSums, DegreeDistributionProperties) {
  testing::Rng rng(43);
  for (int t = 0; t < 50; ++t) {
    const auto m = adjacency(testing::random_graph(rng, testing::uniform_int(rng, 1, 9)));
    double total = 0.0;
    for (const auto& [value, weight] : row_sums_from_measure(m)) {
      total += weight;
      EXPECT_GE(value, 0.0);
      EXPECT_EQ(value, std::round(value));
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(HomStar, Examples) {
  EXPECT_EQ(hom_star(complete_graph(3).degrees(), 3), 12);
  EXPECT_EQ(hom_star(star_graph(4).degrees(), 3), 12);
  const Graph g = cycle_graph(5);
  EXPECT_EQ(hom_star(g.degrees(), 2), 2 * static_cast<std::int64_t>(g.edges().size()));
  EXPECT_THROW(hom_star(g.degrees(), 1), DomainError);
}

TEST(HomCycle, Examples) {
  const auto k3 = hom_cycle(adjacency(complete_graph(3)), 3);
  ASSERT_TRUE(k3.rounded);
  EXPECT_EQ(*k3.rounded, 6);
  EXPECT_NEAR(k3.raw, 6.0, 1e-9);
  EXPECT_EQ(*hom_cycle(adjacency(edgeless_graph(4)), 5).rounded, 0);
  EXPECT_EQ(*hom_cycle(adjacency(cycle_graph(4)), 4).rounded, 32);
  EXPECT_FALSE(hom_cycle(MeasuredMatrix::uniform(0.5 * Matrix::Identity(2, 2)), 3).rounded);
  EXPECT_THROW(hom_cycle(MeasuredMatrix::uniform(example_3x3()), 3), DomainError);
  EXPECT_THROW(hom_cycle(adjacency(complete_graph(3)), 2), DomainError);
}

TEST(HomBruteforce, Examples) {
  EXPECT_EQ(hom_bruteforce(path_graph(2), complete_graph(3)), 6);
  EXPECT_EQ(hom_bruteforce(cycle_graph(3), path_graph(4)), 0);
  EXPECT_EQ(hom_bruteforce(star_graph(3), path_graph(3)), 6);
  EXPECT_EQ(hom_bruteforce(edgeless_graph(3), complete_graph(4)), 64);
  EXPECT_THROW(hom_bruteforce(path_graph(7), path_graph(2)), DomainError);
  EXPECT_THROW(hom_bruteforce(path_graph(2), path_graph(9)), DomainError);
}

TEST(HomFormulas, AgreeWithEnumeration) {
  std::vector<Graph> corpus = testing::all_graphs(4);
  testing::Rng rng(44);
  for (int t = 0; t < 40; ++t) corpus.push_back(testing::random_graph(rng, testing::uniform_int(rng, 5, 6)));
  for (const Graph& g : corpus) {
    for (int k = 2; k <= 4; ++k) EXPECT_EQ(hom_star(g.degrees(), k), hom_bruteforce(star_graph(k), g));
    for (int k = 3; k <= 5; ++k) {
      const HomCount c = hom_cycle(adjacency(g), k);
      const std::int64_t brute = hom_bruteforce(cycle_graph(k), g);
      EXPECT_EQ(*c.rounded, brute);
      EXPECT_LT(std::abs(c.raw - static_cast<double>(brute)), 1e-6);
    }
  }
}

TEST(GraphHelpers, Relabel) {
  const Graph p = path_graph(3);
  const Graph r = relabel(p, {1, 0, 2});  // new 0 = old 1
  EXPECT_TRUE(r.has_edge(0, 1));
  EXPECT_TRUE(r.has_edge(0, 2));
  EXPECT_FALSE(r.has_edge(1, 2));
}

}  // namespace
}  // namespace measrep
