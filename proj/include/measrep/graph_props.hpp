#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "measrep/matrix.hpp"
#include "measrep/measure.hpp"

namespace measrep {

/// Eigenvalues ascending; column j of `vectors` is a unit eigenvector for
/// values[j].
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// tol * ||A||_F. Throws DomainError on non-symmetric input or when
/// max_sweeps is exhausted.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

/// lambda if every atom (x, y) satisfies |y - lambda x| <= tol * max(1, |x|),
/// with lambda the weighted least-squares slope through the origin. None when
/// some atom has |x| <= tol but |y| > tol, when every atom has |x| <= tol, or
/// when a residual is too large.
std::optional<double> line_support_check(const WeightedPointMeasure& mu, double tol = 1e-9);

struct WeightedValue {
  double value;
  double weight;
};

/// Second-coordinate atoms of mu_(A, 1), increasing in value.
std::vector<WeightedValue> row_sums_from_measure(const MeasuredMatrix& m);

/// sum_i d_i^(k-1), the number of homomorphisms from the star with k nodes.
std::int64_t hom_star(std::span<const int> degrees, int k);

struct HomCount {
  double raw = 0.0;
  /// Nearest integer, present when the matrix has integer entries.
  std::optional<std::int64_t> rounded;
};

/// sum_i lambda_i^k over the spectrum of a symmetric matrix, k >= 3.
HomCount hom_cycle(const MeasuredMatrix& m, int k);

inline constexpr int kMaxHomPatternOrder = 6;
inline constexpr int kMaxHomTargetOrder = 8;

/// Number of maps V(F) -> V(G) sending edges to edges, by enumeration.
std::int64_t hom_bruteforce(const Graph& f, const Graph& g);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
/// Star with k nodes: vertex 0 joined to 1..k-1.
Graph star_graph(int k);
Graph edgeless_graph(int n);
/// Vertex v of the result is vertex perm[v] of g.
Graph relabel(const Graph& g, const std::vector<int>& perm);

}  // namespace measrep
