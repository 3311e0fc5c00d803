#include <gtest/gtest.h>

#include <cmath>

#include "measrep/error.hpp"
#include "measrep/graph_props.hpp"
#include "measrep/reconstruction.hpp"
#include "test_support.hpp"

namespace measrep {
namespace {

Matrix example_2x2() {
  Matrix a(2, 2);
  a << 0, 2, 3, 1;
  return a;
}

Matrix example_3x3() {
  Matrix a(3, 3);
  a << 0, 1, 1, 0, 1, 0, 1, 1, 0;
  return a;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

TEST(OrderedSupport, ExampleThreeByThree) {
  const auto m = MeasuredMatrix::uniform(example_3x3());
  const Permutation swap01{1, 0, 2};
  const auto s = ordered_support(generate_measure(m, measrep::apply(swap01, vec({3, 1, 2}))));
  EXPECT_EQ(s.xs, (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(s.ys, (std::vector<double>{5, 4, 3}));
  EXPECT_TRUE(s.strictly_increasing());
}

TEST(Irreducible, ExampleTwoByTwo) {
  const auto m = MeasuredMatrix::uniform(example_2x2());
  EXPECT_TRUE(is_irreducible(m, vec({1, 0})));
  EXPECT_FALSE(is_irreducible(m, vec({-1, 1})));
  const Matrix swap = permutation_matrix({1, 0});
  const Matrix k = swap * m.matrix() - m.matrix() * swap;
  EXPECT_EQ(k, (Matrix(2, 2) << 1, 1, -1, -1).finished());
  EXPECT_EQ((k * vec({-1, 1})).norm(), 0.0);
}

TEST(Irreducible, EveryVectorWhenEverythingCommutes) {
  const auto m = MeasuredMatrix::uniform(Matrix::Identity(4, 4));
  EXPECT_TRUE(is_irreducible(m, vec({1, 1, 1, 1})));
  const Vector v = find_irreducible(m, 3);
  EXPECT_EQ(v, random_distinct_vector(4, 3));
}

TEST(Irreducible, FoundVectorsAreIrreducibleAndDistinct) {
  testing::Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const int n = testing::uniform_int(rng, 2, 5);
    const auto m = MeasuredMatrix::uniform(t % 2 ? testing::random_binary(rng, n) : testing::random_gaussian(rng, n));
    const Vector v = find_irreducible(m, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(is_irreducible(m, v));
    EXPECT_GT(min_entry_gap(v), 0.0);
    // irreducible vectors attain the largest possible Z-set
    EXPECT_EQ(z_set(m, v).size() * commutant_order(m), factorial(n));
  }
  EXPECT_THROW(find_irreducible(MeasuredMatrix::uniform(Matrix::Zero(7, 7)), 1), DomainError);
}

TEST(KernelAvoidance, RandomDrawAndFallback) {
  testing::Rng rng(22);
  for (int t = 0; t < 30; ++t) {
    const int n = testing::uniform_int(rng, 2, 6);
    const int count = testing::uniform_int(rng, 1, 20);
    std::vector<Matrix> kernels;
    for (int c = 0; c < count; ++c) {
      // rank-one matrices have large kernels
      kernels.push_back(testing::random_vector(rng, n) * testing::random_vector(rng, n).transpose());
    }
    for (const Vector& v : {avoid_kernels(kernels, static_cast<std::uint64_t>(t)), combine_outside_kernels(kernels)}) {
      for (const Matrix& k : kernels) EXPECT_TRUE(outside_kernel(k, v));
    }
  }
}

TEST(KernelAvoidance, FallbackHandlesAxisKernels) {
  // K_i kills everything but coordinate i; the basis vectors alone all fail
  std::vector<Matrix> kernels;
  for (int i = 0; i < 4; ++i) {
    Matrix k = Matrix::Zero(4, 4);
    k(0, i) = 1.0;
    kernels.push_back(k);
  }
  const Vector v = combine_outside_kernels(kernels);
  for (const Matrix& k : kernels) EXPECT_TRUE(outside_kernel(k, v));
  EXPECT_THROW(combine_outside_kernels({Matrix::Zero(2, 2)}), DomainError);
}

TEST(SwitchingEquivalence, Examples) {
  const Matrix c4 = adjacency_matrix(cycle_graph(4));
  const auto self = is_switching_equivalent(c4, c4);
  ASSERT_TRUE(self);
  const Matrix relabelled = adjacency_matrix(relabel(cycle_graph(4), {2, 3, 0, 1}));
  const auto w = is_switching_equivalent(relabelled, c4);
  ASSERT_TRUE(w);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(relabelled(i, j), c4((*w)[i], (*w)[j]));
  }
  EXPECT_FALSE(is_switching_equivalent(c4, adjacency_matrix(path_graph(4))));
  EXPECT_THROW(is_switching_equivalent(c4, Matrix::Zero(3, 3)), DomainError);
  EXPECT_THROW(is_switching_equivalent(Matrix::Zero(10, 10), Matrix::Zero(10, 10)), DomainError);
}

TEST(SwitchingEquivalence, MatchesBruteForce) {
  testing::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const int n = testing::uniform_int(rng, 1, 5);
    const Matrix a = testing::random_binary(rng, n);
    const Matrix b = t % 2 ? conjugate(testing::random_permutation(rng, n), a) : testing::random_binary(rng, n);
    bool brute = false;
    for_each_permutation(n, [&](const Permutation& p) { brute = brute || conjugate(p, b) == a; });
    const auto w = is_switching_equivalent(a, b);
    EXPECT_EQ(w.has_value(), brute);
    if (w) EXPECT_EQ(conjugate(*w, b), a);
  }
}

TEST(MaxZVector, Examples) {
  EXPECT_EQ(max_z_vector(MeasuredMatrix::uniform(example_3x3()), 8, 1).cardinality, 3u);
  EXPECT_EQ(max_z_vector(MeasuredMatrix::uniform(Matrix::Identity(3, 3)), 8, 1).cardinality, 1u);
  testing::Rng rng(24);
  EXPECT_EQ(max_z_vector(MeasuredMatrix::uniform(testing::random_gaussian(rng, 3)), 4, 1).cardinality, 6u);
  EXPECT_EQ(commutant_order(MeasuredMatrix::uniform(example_3x3())), 2u);
}

TEST(ChooseEpsilon, Examples) {
  const auto id = MeasuredMatrix::uniform(Matrix::Identity(3, 3));
  EXPECT_DOUBLE_EQ(choose_epsilon(id, vec({1, 2, 3})), std::sqrt(32.0));

  const auto m = MeasuredMatrix::uniform(example_3x3());
  const Vector v = vec({3, 1, 2});
  const MeasureSet z = z_set(m, v);
  double delta = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) delta = std::min(delta, lp_distance(z[i], z[j]));
  }
  const double k = std::max(1.0, norm_inf_to_1(m).value);
  const double eps = choose_epsilon(m, v);
  EXPECT_DOUBLE_EQ(eps, std::min(delta / 2, std::sqrt(32 * k * 1.0)));
  EXPECT_GT(eps, 0.0);
  EXPECT_DOUBLE_EQ(eps, 1.0 / 6);  // members differ by 1/3 of mass at distance >= 1
  EXPECT_THROW(choose_epsilon(m, vec({1, 1, 2})), DomainError);
}

TEST(Oracle, LogsQueriesAndMatchesZSets) {
  const auto hidden = MeasuredMatrix::uniform(example_3x3());
  MeasureOracle oracle(hidden);
  const Vector v = vec({3, 1, 2});
  EXPECT_EQ(oracle.z_set(v).size(), 3u);
  const auto supports = oracle.ordered_supports(v);
  EXPECT_EQ(supports.size(), 3u);
  EXPECT_EQ(oracle.query_count(), 2u);
  EXPECT_EQ(oracle.query_log().front(), v);
  EXPECT_DOUBLE_EQ(oracle.disclosed_norm_bound(), std::max(1.0, norm_inf_to_1(hidden).value));
}

TEST(Reconstruct, ExampleThreeByThree) {
  const Matrix a = example_3x3();
  MeasureOracle oracle(MeasuredMatrix::uniform(a));
  const Reconstruction r = reconstruct(oracle);
  const auto w = is_switching_equivalent(r.matrix, a, 1e-9);
  ASSERT_TRUE(w) << r.matrix;
  EXPECT_GT(r.queries, 0u);
}

TEST(Reconstruct, DiagonalMatrix) {
  const Matrix a = vec({0.5, -1.25, 2.0, 3.5}).asDiagonal();
  MeasureOracle oracle(MeasuredMatrix::uniform(a));
  const Reconstruction r = reconstruct(oracle);
  EXPECT_TRUE(r.matrix.isDiagonal(1e-9)) << r.matrix;
  EXPECT_TRUE(is_switching_equivalent(r.matrix, a, 1e-9));
}

TEST(Reconstruct, RandomMatrices) {
  testing::Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const int n = testing::uniform_int(rng, 2, 5);
    const Matrix a = t % 2 ? testing::random_binary(rng, n) : testing::random_gaussian(rng, n);
    MeasureOracle oracle(MeasuredMatrix::uniform(a));
    ReconstructOptions opts;
    opts.seed = static_cast<std::uint64_t>(t);
    const Reconstruction r = reconstruct(oracle, opts);
    EXPECT_TRUE(is_switching_equivalent(r.matrix, a, 1e-9)) << "trial " << t << "\n" << r.matrix << "\nvs\n" << a;
  }
}

TEST(Reconstruct, SmallStepOnlyStillClose) {
  testing::Rng rng(26);
  const Matrix a = testing::random_gaussian(rng, 4);
  MeasureOracle oracle(MeasuredMatrix::uniform(a));
  ReconstructOptions opts;
  opts.refine = false;
  const Reconstruction r = reconstruct(oracle, opts);
  EXPECT_TRUE(is_switching_equivalent(r.matrix, a, 1e-5));
}

TEST(Reconstruct, RejectsNonUniformAndLargeOrders) {
  MeasureOracle big(MeasuredMatrix::uniform(Matrix::Identity(7, 7)));
  EXPECT_THROW(reconstruct(big), DomainError);
  const MeasuredMatrix skew(example_3x3(), vec({0.5, 0.25, 0.25}));
  MeasureOracle oracle(skew);
  EXPECT_THROW(reconstruct(oracle), DomainError);
}

// d_LP(mu_Px, mu_P(x + d^2/(64K) e_i)) < d/4 whenever ||A|| <= K.
TEST(PerturbationBound, RandomInstances) {
  testing::Rng rng(27);
  for (int t = 0; t < 500; ++t) {
    const int n = testing::uniform_int(rng, 1, 6);
    const auto m = MeasuredMatrix::uniform(testing::random_gaussian(rng, n));
    const double k = std::max(1.0, norm_inf_to_1(m).value) * testing::uniform(rng, 1.0, 2.0);
    const Vector x = testing::random_vector(rng, n, -2, 2);
    const double d = testing::uniform(rng, 1e-3, 1.0);
    const int i = testing::uniform_int(rng, 0, n - 1);
    const Permutation p = testing::random_permutation(rng, n);
    const double dist = lp_distance(generate_measure(m, measrep::apply(p, x)), generate_measure(m, measrep::apply(p, perturb(x, i, d, k))));
    EXPECT_LT(dist, d / 4);
  }
}

// Each member of Z_v has exactly one member of Z at the perturbed vector
// within eps / 4, and the cardinalities agree.
TEST(Isolation, UniqueNearbyMeasure) {
  testing::Rng rng(28);
  for (int t = 0; t < 15; ++t) {
    const int n = testing::uniform_int(rng, 2, 4);
    const auto m = MeasuredMatrix::uniform(testing::random_gaussian(rng, n));
    const Vector v = find_irreducible(m, static_cast<std::uint64_t>(t));
    const double k = std::max(1.0, norm_inf_to_1(m).value);
    const double eps = choose_epsilon(m, v);
    const MeasureSet zv = z_set(m, v);
    for (int i = 0; i < n; ++i) {
      const MeasureSet zi = z_set(m, perturb(v, i, eps, k));
      EXPECT_EQ(zi.size(), zv.size());
      for (const auto& nu1 : zv) {
        int close = 0;
        for (const auto& nu : zi) close += lp_distance(nu1, nu) < eps / 4;
        EXPECT_EQ(close, 1);
      }
    }
  }
}

}  // namespace
}  // namespace measrep
