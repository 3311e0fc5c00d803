#include "measrep/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "measrep/error.hpp"

namespace measrep {

MeasuredMatrix::MeasuredMatrix(Matrix a, Vector p) : a_(std::move(a)), p_(std::move(p)) {
  if (a_.rows() != a_.cols()) throw DomainError("matrix must be square");
  if (a_.rows() == 0) throw DomainError("matrix must have positive order");
  if (p_.size() != a_.rows()) {
    throw DomainError("probability vector has length " + std::to_string(p_.size()) +
                      ", matrix has order " + std::to_string(a_.rows()));
  }
  if (!a_.allFinite()) throw DomainError("matrix entries must be finite");
  for (Eigen::Index i = 0; i < p_.size(); ++i) {
    if (!(p_(i) > 0.0)) throw DomainError("probability vector entries must be positive");
  }
  if (std::abs(p_.sum() - 1.0) > kMassTol) throw DomainError("probability vector must sum to 1");
}

MeasuredMatrix MeasuredMatrix::uniform(Matrix a) {
  const auto n = static_cast<int>(a.rows());
  return MeasuredMatrix(std::move(a), uniform_distribution(std::max(n, 0)));
}

bool MeasuredMatrix::has_uniform_p() const {
  const double u = 1.0 / static_cast<double>(n());
  return (p_.array() - u).abs().maxCoeff() <= 1e-12;
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw DomainError("graph vertex count must be nonnegative");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") out of range for " + std::to_string(n) + " vertices");
    }
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw DomainError("duplicate edge (" + std::to_string(dup->first) + "," +
                      std::to_string(dup->second) + ")");
  }
  edges_ = std::move(edges);
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{u, v});
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_), 0);
  for (const auto& [u, v] : edges_) {
    ++d[static_cast<std::size_t>(u)];
    ++d[static_cast<std::size_t>(v)];
  }
  return d;
}

Representation parse_representation(std::string_view name) {
  if (name == "adjacency") return Representation::adjacency;
  if (name == "kirchhoff") return Representation::kirchhoff;
  if (name == "normalized") return Representation::normalized;
  throw DomainError("unknown representation '" + std::string(name) +
                    "' (adjacency|kirchhoff|normalized)");
}

std::string to_string(Representation rep) {
  switch (rep) {
    case Representation::adjacency: return "adjacency";
    case Representation::kirchhoff: return "kirchhoff";
    case Representation::normalized: return "normalized";
  }
  return "?";
}

PChoice parse_p_choice(std::string_view name) {
  if (name == "uniform") return PChoice::uniform;
  if (name == "stationary") return PChoice::stationary;
  throw DomainError("unknown probability choice '" + std::string(name) + "'");
}

std::string to_string(PChoice choice) {
  return choice == PChoice::uniform ? "uniform" : "stationary";
}

Matrix adjacency_matrix(const Graph& g) {
  Matrix a = Matrix::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Matrix kirchhoff_matrix(const Graph& g) {
  Matrix k = -adjacency_matrix(g);
  const auto d = g.degrees();
  for (int i = 0; i < g.n(); ++i) k(i, i) = d[static_cast<std::size_t>(i)];
  return k;
}

namespace {

void require_no_isolated(const Graph& g, const char* what) {
  const auto d = g.degrees();
  for (int i = 0; i < g.n(); ++i) {
    if (d[static_cast<std::size_t>(i)] == 0) {
      throw DomainError(std::string(what) + " needs minimum degree 1; vertex " +
                        std::to_string(i) + " is isolated");
    }
  }
}

}  // namespace

Matrix normalized_laplacian_matrix(const Graph& g) {
  require_no_isolated(g, "normalized Laplacian");
  const auto d = g.degrees();
  Matrix l = Matrix::Identity(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    l(u, v) = -1.0 / d[static_cast<std::size_t>(u)];
    l(v, u) = -1.0 / d[static_cast<std::size_t>(v)];
  }
  return l;
}

Vector stationary_distribution(const Graph& g) {
  require_no_isolated(g, "stationary distribution");
  const auto d = g.degrees();
  Vector p(g.n());
  const double total = 2.0 * static_cast<double>(g.edges().size());
  for (int i = 0; i < g.n(); ++i) p(i) = d[static_cast<std::size_t>(i)] / total;
  return p;
}

Vector uniform_distribution(int n) {
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

namespace {

Vector choose_p(const Graph& g, PChoice p) {
  return p == PChoice::uniform ? uniform_distribution(g.n()) : stationary_distribution(g);
}

}  // namespace

MeasuredMatrix adjacency(const Graph& g, PChoice p) {
  return MeasuredMatrix(adjacency_matrix(g), choose_p(g, p));
}

MeasuredMatrix kirchhoff(const Graph& g, PChoice p) {
  return MeasuredMatrix(kirchhoff_matrix(g), choose_p(g, p));
}

MeasuredMatrix normalized_laplacian(const Graph& g, PChoice p) {
  return MeasuredMatrix(normalized_laplacian_matrix(g), choose_p(g, p));
}

MeasuredMatrix represent(const Graph& g, Representation rep, PChoice p) {
  switch (rep) {
    case Representation::adjacency: return adjacency(g, p);
    case Representation::kirchhoff: return kirchhoff(g, p);
    case Representation::normalized: return normalized_laplacian(g, p);
  }
  throw DomainError("unknown representation");
}

namespace {

void require_length(const MeasuredMatrix& m, const Vector& x) {
  if (x.size() != m.n()) {
    throw DomainError("vector has length " + std::to_string(x.size()) + ", matrix has order " +
                      std::to_string(m.n()));
  }
}

}  // namespace

WeightedPointMeasure generate_measure(const MeasuredMatrix& m, const Vector& x) {
  require_length(m, x);
  const Vector ax = m.matrix() * x;
  std::vector<double> points(2 * static_cast<std::size_t>(m.n()));
  for (int i = 0; i < m.n(); ++i) {
    points[2 * static_cast<std::size_t>(i)] = x(i);
    points[2 * static_cast<std::size_t>(i) + 1] = ax(i);
  }
  return WeightedPointMeasure(2, points, std::span<const double>(m.p().data(), m.p().size()));
}

WeightedPointMeasure marginal_first(const MeasuredMatrix& m, const Vector& x) {
  require_length(m, x);
  return WeightedPointMeasure(1, std::span<const double>(x.data(), x.size()),
                              std::span<const double>(m.p().data(), m.p().size()));
}

MeasureSet z_set(const MeasuredMatrix& m, const Vector& x) {
  require_length(m, x);
  if (m.n() > kMaxZSetOrder) {
    throw DomainError("z_set enumerates n! permutations and supports order <= " +
                      std::to_string(kMaxZSetOrder) + "; use sampled profiles for order " +
                      std::to_string(m.n()));
  }
  MeasureSet out(2);
  for (const Permutation& perm : stabilizer_permutations(m.p())) {
    out.insert(generate_measure(m, apply(perm, x)));
  }
  return out;
}

OperatorNorm norm_inf_to_1(const MeasuredMatrix& m) {
  const Matrix& a = m.matrix();
  const Vector& p = m.p();
  const int n = m.n();
  if (n > kMaxExactNormOrder) {
    return {p.dot(a.cwiseAbs().rowwise().sum()), false};
  }
  // s and -s give the same objective, so s_0 = +1 is fixed and the other
  // signs are walked in Gray-code order, flipping one column per step.
  Vector s = Vector::Ones(n);
  Vector y = a * s;
  double best = p.dot(y.cwiseAbs());
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int j = std::countr_zero(g) + 1;
    s(j) = -s(j);
    if ((g & 1023) == 0) {
      y.noalias() = a * s;  // bound incremental drift
    } else {
      y += (2.0 * s(j)) * a.col(j);
    }
    best = std::max(best, p.dot(y.cwiseAbs()));
  }
  return {best, true};
}

Vector perturb(const Vector& x, int i, double d, double k) {
  if (i < 0 || i >= x.size()) {
    throw DomainError("perturb: coordinate " + std::to_string(i) + " out of range");
  }
  if (!(d > 0.0)) throw DomainError("perturb: d must be positive");
  if (!(k >= 1.0)) throw DomainError("perturb: K must be at least 1");
  Vector y = x;
  y(i) += d * d / (64.0 * k);
  return y;
}

}  // namespace measrep
