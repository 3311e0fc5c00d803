#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "measrep/lp_distance.hpp"
#include "measrep/matrix.hpp"
#include "measrep/measure.hpp"
#include "measrep/permutation.hpp"

namespace measrep {

/// (xs, ys) with xs nondecreasing and rho = sum_i w_i delta_(xs_i, ys_i).
/// Unique when xs is strictly increasing.
struct OrderedSupport {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> weights;

  bool strictly_increasing() const;
};

/// Throws DomainError unless mu lives on R^2.
OrderedSupport ordered_support(const WeightedPointMeasure& mu);

/// Answers Z-set queries about a matrix it never reveals.
class MeasureOracle {
 public:
  explicit MeasureOracle(MeasuredMatrix hidden);

  int n() const { return hidden_.n(); }

  /// Z_(A,x). Every call is appended to the query log.
  MeasureSet z_set(const Vector& x);
  /// Ordered supports of the members of Z_(A,x), in member order. Logged.
  std::vector<OrderedSupport> ordered_supports(const Vector& x);

  /// max(1, ||A||_inf->1), computed on the hidden side.
  double disclosed_norm_bound() const { return norm_bound_; }

  std::size_t query_count() const;
  std::vector<Vector> query_log() const;

 private:
  MeasuredMatrix hidden_;
  double norm_bound_;
  mutable std::mutex mutex_;
  std::vector<Vector> log_;
};

/// v is irreducible iff (PA - AP) P1 v != 0 for every P1 and every P with
/// P p = p, PA != AP; residuals at or below rel_tol * ||v|| count as zero.
bool is_irreducible(const MeasuredMatrix& m, const Vector& v, double rel_tol = 1e-9);

inline constexpr int kMaxIrreducibleOrder = 6;

/// Irreducible vector with pairwise distinct entries, by random draws
/// verified against every kernel (PA - AP) P1. Order <= 6.
Vector find_irreducible(const MeasuredMatrix& m, std::uint64_t seed, int max_draws = 64);

/// A vector outside the kernel of every (nonzero) matrix: a random draw,
/// checked, falling back to combine_outside_kernels.
Vector avoid_kernels(const std::vector<Matrix>& kernels, std::uint64_t seed);

/// Deterministic construction: start from a basis vector outside the first
/// kernel, then for each further matrix K add alpha * w with K w != 0 and
/// alpha chosen to avoid the finitely many values that would put the sum
/// back into some kernel.
Vector combine_outside_kernels(const std::vector<Matrix>& kernels);

/// True iff K v is numerically nonzero relative to ||K|| ||v||.
bool outside_kernel(const Matrix& k, const Vector& v);

inline constexpr int kMaxSwitchingOrder = 9;

/// Permutation perm with a(i, j) = b(perm[i], perm[j]) within tol, i.e.
/// A = P B P^T, or nullopt. Backtracking over candidates filtered by
/// diagonal entries and sorted row and column contents. Order <= 9.
std::optional<Permutation> is_switching_equivalent(const Matrix& a, const Matrix& b,
                                                   double tol = 1e-9);

/// |{P : PA = AP, P p = p}|.
std::size_t commutant_order(const MeasuredMatrix& m);

/// Random vector with entries in [-1, 1] whose sorted entries differ by at
/// least `min_gap`.
Vector random_distinct_vector(int n, std::uint64_t seed, double min_gap = 1e-3);

struct ZVector {
  Vector v;
  std::size_t cardinality = 0;
};

using ZSetQuery = std::function<MeasureSet(const Vector&)>;

/// Among `trials` random distinct-entry vectors, one maximizing |Z_(A,x)|.
ZVector max_z_vector(const ZSetQuery& query, int n, int trials, std::uint64_t seed);
ZVector max_z_vector(const MeasuredMatrix& m, int trials, std::uint64_t seed);

/// Smallest gap between sorted entries of v.
double min_entry_gap(const Vector& v);

/// min(delta / 2, sqrt(32 K g)): delta is the smallest Lévy-Prokhorov
/// distance between distinct members of Z_v (omitted if |Z_v| = 1), g the
/// smallest entry gap of v. The second term keeps every perturbation by
/// eps^2 / (64 K) below half a gap, so orderings survive.
double choose_epsilon(const MeasureSet& z_v, const Vector& v, double k,
                      BaseMetric metric = BaseMetric::euclidean);
/// Same with Z_v and K = max(1, ||A||_inf->1) computed from m.
double choose_epsilon(const MeasuredMatrix& m, const Vector& v,
                      BaseMetric metric = BaseMetric::euclidean);

struct ReconstructOptions {
  /// Norm bound; the oracle's disclosed bound when unset.
  std::optional<double> k;
  std::uint64_t seed = 1;
  int trials = 8;
  int max_halvings = 6;
  int max_redraws = 8;
  BaseMetric metric = BaseMetric::euclidean;
  /// Re-estimate each column from a perturbation of half the entry gap
  /// once the small-step estimate is known.
  bool refine = true;
};

struct Reconstruction {
  /// P2 A P2^T for some permutation P2.
  Matrix matrix;
  Vector v;
  double epsilon = 0.0;
  int halvings = 0;
  int redraws = 0;
  std::size_t queries = 0;
};

/// Recovers the hidden matrix up to switching equivalence from Z-set
/// queries. Requires uniform weights and order <= 6. Throws DomainError when
/// no isolating epsilon is found within the halving budget.
Reconstruction reconstruct(MeasureOracle& oracle, const ReconstructOptions& options = {});

}  // namespace measrep
