#include "measrep/graph_props.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "measrep/error.hpp"

namespace measrep {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

void require_symmetric(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) throw DomainError(std::string(what) + ": matrix must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError(std::string(what) + " requires a symmetric matrix");
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& input, double tol, int max_sweeps) {
  require_symmetric(input, "jacobi_eigen");
  const Eigen::Index n = input.rows();
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double threshold = tol * a.norm();
  SymmetricEigen out;
  while (off_diagonal_norm(a) > threshold) {
    if (out.sweeps == max_sweeps) {
      throw DomainError("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) +
                        " sweeps");
    }
    ++out.sweeps;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.values.push_back(a(src, src));
    out.vectors.col(j) = v.col(src);
  }
  return out;
}

std::optional<double> line_support_check(const WeightedPointMeasure& mu, double tol) {
  if (mu.dim() != 2) throw DomainError("line_support_check needs a measure on R^2");
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double x = mu.point(a)[0];
    const double y = mu.point(a)[1];
    if (std::abs(x) <= tol) {
      if (std::abs(y) > tol) return std::nullopt;
      continue;
    }
    sxy += mu.weight(a) * x * y;
    sxx += mu.weight(a) * x * x;
  }
  if (sxx == 0.0) return std::nullopt;
  const double lambda = sxy / sxx;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double x = mu.point(a)[0];
    const double y = mu.point(a)[1];
    if (std::abs(y - lambda * x) > tol * std::max(1.0, std::abs(x))) return std::nullopt;
  }
  return lambda;
}

std::vector<WeightedValue> row_sums_from_measure(const MeasuredMatrix& m) {
  const WeightedPointMeasure mu = generate_measure(m, Vector::Ones(m.n()));
  std::vector<WeightedValue> out;
  out.reserve(mu.size());
  for (std::size_t a = 0; a < mu.size(); ++a) out.push_back({mu.point(a)[1], mu.weight(a)});
  return out;
}

std::int64_t hom_star(std::span<const int> degrees, int k) {
  if (k < 2) throw DomainError("hom_star: k must be at least 2");
  std::int64_t total = 0;
  for (int d : degrees) {
    if (d < 0) throw DomainError("hom_star: negative degree");
    std::int64_t term = 1;
    for (int e = 0; e < k - 1; ++e) term *= d;
    total += term;
  }
  return total;
}

HomCount hom_cycle(const MeasuredMatrix& m, int k) {
  if (k < 3) throw DomainError("hom_cycle: k must be at least 3");
  const SymmetricEigen eig = jacobi_eigen(m.matrix());
  HomCount out;
  for (double lambda : eig.values) out.raw += std::pow(lambda, k);
  const Matrix& a = m.matrix();
  const bool integral = (a.array() == a.array().round()).all();
  if (integral) out.rounded = std::llround(out.raw);
  return out;
}

namespace {

struct HomCounter {
  const Graph& f;
  const Graph& g;
  std::vector<std::vector<int>> earlier_neighbors;
  std::vector<int> image;

  std::int64_t count(int vertex) {
    if (vertex == f.n()) return 1;
    std::int64_t total = 0;
    for (int target = 0; target < g.n(); ++target) {
      bool ok = true;
      for (int u : earlier_neighbors[static_cast<std::size_t>(vertex)]) {
        if (!g.has_edge(image[static_cast<std::size_t>(u)], target)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(vertex)] = target;
      total += count(vertex + 1);
    }
    return total;
  }
};

}  // namespace

std::int64_t hom_bruteforce(const Graph& f, const Graph& g) {
  if (f.n() > kMaxHomPatternOrder || g.n() > kMaxHomTargetOrder) {
    throw DomainError("hom_bruteforce supports |V(F)| <= " + std::to_string(kMaxHomPatternOrder) +
                      " and |V(G)| <= " + std::to_string(kMaxHomTargetOrder));
  }
  HomCounter counter{f, g, std::vector<std::vector<int>>(static_cast<std::size_t>(f.n())),
                     std::vector<int>(static_cast<std::size_t>(f.n()), -1)};
  for (const auto& [u, v] : f.edges()) {
    counter.earlier_neighbors[static_cast<std::size_t>(v)].push_back(u);  // u < v
  }
  return counter.count(0);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw DomainError("cycle_graph needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, std::move(edges));
}

Graph star_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u < k; ++u) edges.emplace_back(0, u);
  return Graph(k, std::move(edges));
}

Graph edgeless_graph(int n) { return Graph(n, {}); }

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw DomainError("relabel: permutation size");
  std::vector<int> inv(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inv[static_cast<std::size_t>(perm[v])] = static_cast<int>(v);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) {
    edges.emplace_back(inv[static_cast<std::size_t>(u)], inv[static_cast<std::size_t>(v)]);
  }
  return Graph(g.n(), std::move(edges));
}

}  // namespace measrep
