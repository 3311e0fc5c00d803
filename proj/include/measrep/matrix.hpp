#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "measrep/measure.hpp"
#include "measrep/permutation.hpp"

namespace measrep {

/// Square matrix with a probability vector on its index set. Immutable.
class MeasuredMatrix {
 public:
  /// Throws DomainError unless `a` is square, `p` matches its order, and p
  /// is a strictly positive probability vector.
  MeasuredMatrix(Matrix a, Vector p);
  static MeasuredMatrix uniform(Matrix a);

  int n() const { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const { return a_; }
  const Vector& p() const { return p_; }
  bool has_uniform_p() const;

 private:
  Matrix a_;
  Vector p_;
};

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  /// Throws DomainError on self-loops, duplicate edges or out-of-range
  /// endpoints. Edges are stored as (min, max), sorted.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;
  std::vector<int> degrees() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

enum class Representation { adjacency, kirchhoff, normalized };
enum class PChoice { uniform, stationary };

Representation parse_representation(std::string_view name);
std::string to_string(Representation rep);
PChoice parse_p_choice(std::string_view name);
std::string to_string(PChoice choice);

Matrix adjacency_matrix(const Graph& g);
/// D - A.
Matrix kirchhoff_matrix(const Graph& g);
/// Id - D^-1 A; throws DomainError if some vertex is isolated.
Matrix normalized_laplacian_matrix(const Graph& g);
/// p_i = d_i / sum d; throws DomainError if some vertex is isolated.
Vector stationary_distribution(const Graph& g);
Vector uniform_distribution(int n);

MeasuredMatrix adjacency(const Graph& g, PChoice p = PChoice::uniform);
MeasuredMatrix kirchhoff(const Graph& g, PChoice p = PChoice::uniform);
MeasuredMatrix normalized_laplacian(const Graph& g, PChoice p = PChoice::uniform);
MeasuredMatrix represent(const Graph& g, Representation rep, PChoice p = PChoice::uniform);

/// sum_i p_i delta_(x_i, (Ax)_i).
WeightedPointMeasure generate_measure(const MeasuredMatrix& m, const Vector& x);

/// sum_i p_i delta_(x_i).
WeightedPointMeasure marginal_first(const MeasuredMatrix& m, const Vector& x);

inline constexpr int kMaxZSetOrder = 8;

/// {mu_(Px) : P permutation, P p = p}, deduplicated. Order <= 8.
MeasureSet z_set(const MeasuredMatrix& m, const Vector& x);

struct OperatorNorm {
  double value;
  /// False when `value` is only the row-sum upper bound.
  bool exact;
};

inline constexpr int kMaxExactNormOrder = 22;

/// sup_v ||Av||_1 / ||v||_inf with ||y||_1 = sum_i p_i |y_i|. The objective is
/// convex, so the supremum over the unit cube sits at a sign vector; orders
/// above 22 fall back to sum_i p_i sum_j |A_ij|.
OperatorNorm norm_inf_to_1(const MeasuredMatrix& m);

/// x + d^2 / (64 K) e_i, with a 0-based coordinate index i.
Vector perturb(const Vector& x, int i, double d, double k);

}  // namespace measrep
