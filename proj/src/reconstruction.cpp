#include "measrep/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "measrep/error.hpp"

namespace measrep {

bool OrderedSupport::strictly_increasing() const {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i])) return false;
  }
  return true;
}

OrderedSupport ordered_support(const WeightedPointMeasure& mu) {
  if (mu.dim() != 2) throw DomainError("ordered support needs a measure on R^2");
  OrderedSupport s;
  s.xs.reserve(mu.size());
  s.ys.reserve(mu.size());
  s.weights.reserve(mu.size());
  // Canonical atom order is lexicographic, so xs come out nondecreasing.
  for (std::size_t a = 0; a < mu.size(); ++a) {
    s.xs.push_back(mu.point(a)[0]);
    s.ys.push_back(mu.point(a)[1]);
    s.weights.push_back(mu.weight(a));
  }
  return s;
}

MeasureOracle::MeasureOracle(MeasuredMatrix hidden)
    : hidden_(std::move(hidden)), norm_bound_(std::max(1.0, norm_inf_to_1(hidden_).value)) {}

MeasureSet MeasureOracle::z_set(const Vector& x) {
  std::lock_guard lock(mutex_);
  log_.push_back(x);
  return measrep::z_set(hidden_, x);
}

std::vector<OrderedSupport> MeasureOracle::ordered_supports(const Vector& x) {
  const MeasureSet z = z_set(x);
  std::vector<OrderedSupport> out;
  out.reserve(z.size());
  for (const auto& mu : z) out.push_back(ordered_support(mu));
  return out;
}

std::size_t MeasureOracle::query_count() const {
  std::lock_guard lock(mutex_);
  return log_.size();
}

std::vector<Vector> MeasureOracle::query_log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

namespace {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool commutes(const Permutation& perm, const Matrix& a) {
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  const Matrix pm = permutation_matrix(perm);
  return ((pm * a - a * pm).cwiseAbs().maxCoeff()) <= tol;
}

// PA - AP for every p-preserving P that does not commute with A.
std::vector<Matrix> commutator_kernels(const MeasuredMatrix& m) {
  std::vector<Matrix> out;
  for (const Permutation& perm : stabilizer_permutations(m.p())) {
    if (commutes(perm, m.matrix())) continue;
    const Matrix pm = permutation_matrix(perm);
    out.push_back(pm * m.matrix() - m.matrix() * pm);
  }
  return out;
}

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

bool is_irreducible(const MeasuredMatrix& m, const Vector& v, double rel_tol) {
  if (v.size() != m.n()) throw DomainError("is_irreducible: vector length does not match order");
  if (m.n() > kMaxIrreducibleOrder) {
    throw DomainError("irreducibility check enumerates permutation pairs; order <= " +
                      std::to_string(kMaxIrreducibleOrder));
  }
  const std::vector<Matrix> kernels = commutator_kernels(m);
  if (kernels.empty()) return true;
  const double threshold = rel_tol * v.norm();
  bool ok = true;
  for_each_permutation(m.n(), [&](const Permutation& p1) {
    if (!ok) return;
    const Vector w = apply(p1, v);
    for (const Matrix& k : kernels) {
      if ((k * w).norm() <= threshold) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

Vector random_distinct_vector(int n, std::uint64_t seed, double min_gap) {
  if (n < 1) throw DomainError("random_distinct_vector: order must be positive");
  std::mt19937_64 rng(mix_seed(seed));
  Vector v(n);
  for (;;) {
    for (int i = 0; i < n; ++i) v(i) = uniform_pm1(rng);
    if (n == 1 || min_entry_gap(v) >= min_gap) return v;
  }
}

Vector find_irreducible(const MeasuredMatrix& m, std::uint64_t seed, int max_draws) {
  if (m.n() > kMaxIrreducibleOrder) {
    throw DomainError("find_irreducible supports order <= " + std::to_string(kMaxIrreducibleOrder));
  }
  for (int draw = 0; draw < max_draws; ++draw) {
    Vector v = random_distinct_vector(m.n(), seed + static_cast<std::uint64_t>(draw));
    if (is_irreducible(m, v)) return v;
  }
  throw DomainError("find_irreducible: no irreducible vector after " + std::to_string(max_draws) +
                    " draws; the residual tolerance is degenerate for this matrix");
}

bool outside_kernel(const Matrix& k, const Vector& v) {
  return (k * v).norm() > 1e-9 * k.norm() * v.norm();
}

Vector combine_outside_kernels(const std::vector<Matrix>& kernels) {
  if (kernels.empty()) throw DomainError("combine_outside_kernels: no matrices");
  const auto n = kernels.front().cols();
  auto nonzero_column = [](const Matrix& k) {
    Eigen::Index best = 0;
    k.colwise().norm().maxCoeff(&best);
    return Vector::Unit(k.cols(), best);
  };
  for (const Matrix& k : kernels) {
    if (k.cols() != n) throw DomainError("combine_outside_kernels: inconsistent sizes");
    if (k.norm() == 0.0) throw DomainError("combine_outside_kernels: zero matrix");
  }
  Vector v = nonzero_column(kernels.front());
  for (std::size_t last = 1; last < kernels.size(); ++last) {
    if (outside_kernel(kernels[last], v)) continue;
    const Vector w = nonzero_column(kernels[last]);
    // Each earlier kernel rules out at most one alpha, and the new one only
    // alpha = 0, so one of 1..last+1 works.
    bool placed = false;
    for (std::size_t step = 1; step <= last + 1 && !placed; ++step) {
      const Vector candidate = v + static_cast<double>(step) * w;
      bool all = true;
      for (std::size_t i = 0; i <= last && all; ++i) all = outside_kernel(kernels[i], candidate);
      if (all) {
        v = candidate;
        placed = true;
      }
    }
    if (!placed) throw DomainError("combine_outside_kernels: tolerance too tight");
  }
  return v;
}

Vector avoid_kernels(const std::vector<Matrix>& kernels, std::uint64_t seed) {
  if (kernels.empty()) throw DomainError("avoid_kernels: no matrices");
  const auto n = static_cast<int>(kernels.front().cols());
  std::mt19937_64 rng(mix_seed(seed));
  std::normal_distribution<double> gauss;
  for (int draw = 0; draw < 8; ++draw) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    const bool ok = std::all_of(kernels.begin(), kernels.end(),
                                [&](const Matrix& k) { return outside_kernel(k, v); });
    if (ok) return v;
  }
  return combine_outside_kernels(kernels);
}

namespace {

std::vector<double> sorted_copy(const Eigen::Ref<const Vector>& x) {
  std::vector<double> s(x.data(), x.data() + x.size());
  std::sort(s.begin(), s.end());
  return s;
}

bool close_all(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

class SwitchingSearch {
 public:
  SwitchingSearch(const Matrix& a, const Matrix& b, double tol)
      : a_(a), b_(b), tol_(tol), n_(static_cast<int>(a.rows())) {
    candidates_.resize(static_cast<std::size_t>(n_));
    std::vector<std::vector<double>> rows_b, cols_b;
    for (int j = 0; j < n_; ++j) {
      rows_b.push_back(sorted_copy(b.row(j).transpose()));
      cols_b.push_back(sorted_copy(b.col(j)));
    }
    for (int i = 0; i < n_; ++i) {
      const auto row_a = sorted_copy(a.row(i).transpose());
      const auto col_a = sorted_copy(a.col(i));
      for (int j = 0; j < n_; ++j) {
        if (std::abs(a(i, i) - b(j, j)) > tol) continue;
        if (!close_all(row_a, rows_b[static_cast<std::size_t>(j)], tol)) continue;
        if (!close_all(col_a, cols_b[static_cast<std::size_t>(j)], tol)) continue;
        candidates_[static_cast<std::size_t>(i)].push_back(j);
      }
    }
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return candidates_[static_cast<std::size_t>(x)].size() <
             candidates_[static_cast<std::size_t>(y)].size();
    });
  }

  std::optional<Permutation> run() {
    perm_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), false);
    if (extend(0)) return perm_;
    return std::nullopt;
  }

 private:
  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const int i = order_[depth];
    for (int c : candidates_[static_cast<std::size_t>(i)]) {
      if (used_[static_cast<std::size_t>(c)]) continue;
      bool consistent = true;
      for (std::size_t d = 0; d < depth && consistent; ++d) {
        const int j = order_[d];
        const int cj = perm_[static_cast<std::size_t>(j)];
        consistent = std::abs(a_(i, j) - b_(c, cj)) <= tol_ && std::abs(a_(j, i) - b_(cj, c)) <= tol_;
      }
      if (!consistent) continue;
      perm_[static_cast<std::size_t>(i)] = c;
      used_[static_cast<std::size_t>(c)] = true;
      if (extend(depth + 1)) return true;
      used_[static_cast<std::size_t>(c)] = false;
      perm_[static_cast<std::size_t>(i)] = -1;
    }
    return false;
  }

  const Matrix& a_;
  const Matrix& b_;
  double tol_;
  int n_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> order_;
  Permutation perm_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<Permutation> is_switching_equivalent(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw DomainError("is_switching_equivalent: matrices must be square");
  }
  if (a.rows() != b.rows()) {
    throw DomainError("is_switching_equivalent: orders differ (" + std::to_string(a.rows()) +
                      " vs " + std::to_string(b.rows()) + ")");
  }
  if (a.rows() > kMaxSwitchingOrder) {
    throw DomainError("is_switching_equivalent supports order <= " +
                      std::to_string(kMaxSwitchingOrder));
  }
  return SwitchingSearch(a, b, tol).run();
}

std::size_t commutant_order(const MeasuredMatrix& m) {
  std::size_t count = 0;
  for (const Permutation& perm : stabilizer_permutations(m.p())) {
    if (commutes(perm, m.matrix())) ++count;
  }
  return count;
}

ZVector max_z_vector(const ZSetQuery& query, int n, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("max_z_vector: trials must be positive");
  ZVector best;
  for (int t = 0; t < trials; ++t) {
    Vector x = random_distinct_vector(n, seed * 7919 + static_cast<std::uint64_t>(t));
    const std::size_t card = query(x).size();
    if (card > best.cardinality) {
      best.v = std::move(x);
      best.cardinality = card;
    }
  }
  return best;
}

ZVector max_z_vector(const MeasuredMatrix& m, int trials, std::uint64_t seed) {
  return max_z_vector([&m](const Vector& x) { return z_set(m, x); }, m.n(), trials, seed);
}

double min_entry_gap(const Vector& v) {
  const auto s = sorted_copy(v);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i] - s[i - 1]);
  return gap;
}

double choose_epsilon(const MeasureSet& z_v, const Vector& v, double k, BaseMetric metric) {
  if (k < 1.0) throw DomainError("choose_epsilon: K must be at least 1");
  const double gap = min_entry_gap(v);
  if (!(gap > 0.0)) throw DomainError("choose_epsilon: v must have pairwise distinct entries");
  double eps = std::isfinite(gap) ? std::sqrt(32.0 * k * gap) : 1.0;
  for (std::size_t i = 0; i < z_v.size(); ++i) {
    for (std::size_t j = i + 1; j < z_v.size(); ++j) {
      eps = std::min(eps, 0.5 * lp_distance(z_v[i], z_v[j], metric));
    }
  }
  return eps;
}

double choose_epsilon(const MeasuredMatrix& m, const Vector& v, BaseMetric metric) {
  const double k = std::max(1.0, norm_inf_to_1(m).value);
  return choose_epsilon(z_set(m, v), v, k, metric);
}

namespace {

struct ColumnPass {
  bool ok = false;
  Matrix columns;
};

// One attempt at recovering every column with perturbations of size
// eps^2 / (64 K) at the given epsilon.
ColumnPass recover_columns(MeasureOracle& oracle, const Vector& v, const std::vector<int>& rank_to_index,
                           const WeightedPointMeasure& nu1, const OrderedSupport& base,
                           std::size_t z_size, double eps, double k, BaseMetric metric) {
  const int n = oracle.n();
  const double h = eps * eps / (64.0 * k);
  ColumnPass pass;
  pass.columns = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int j = rank_to_index[static_cast<std::size_t>(i)];
    const MeasureSet z = oracle.z_set(perturb(v, j, eps, k));
    if (z.size() != z_size) return pass;
    const WeightedPointMeasure* match = nullptr;
    for (const auto& mu : z) {
      if (lp_distance(nu1, mu, metric) < eps / 4.0) {
        if (match != nullptr) return pass;
        match = &mu;
      }
    }
    if (match == nullptr) return pass;
    const OrderedSupport moved = ordered_support(*match);
    if (moved.xs.size() != base.xs.size() || !moved.strictly_increasing()) return pass;
    for (int r = 0; r < n; ++r) {
      const double expected = base.xs[static_cast<std::size_t>(r)] + (r == i ? h : 0.0);
      if (std::abs(moved.xs[static_cast<std::size_t>(r)] - expected) >
          1e-12 * (1.0 + std::abs(expected))) {
        return pass;
      }
      pass.columns(r, i) =
          (moved.ys[static_cast<std::size_t>(r)] - base.ys[static_cast<std::size_t>(r)]) / h;
    }
  }
  pass.ok = true;
  return pass;
}

// Replaces each column by the difference quotient at step gap / 2 when the
// member predicted by the current estimate is identified unambiguously.
void refine_columns(MeasureOracle& oracle, const Vector& v, const std::vector<int>& rank_to_index,
                    const OrderedSupport& base, Matrix& columns) {
  const int n = oracle.n();
  const double step = 0.5 * min_entry_gap(v);
  if (!std::isfinite(step)) return;
  double scale = 1.0;
  for (double y : base.ys) scale = std::max(scale, std::abs(y));
  const double tol = 1e-6 * scale;
  for (int i = 0; i < n; ++i) {
    Vector x = v;
    x(rank_to_index[static_cast<std::size_t>(i)]) += step;
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    const OrderedSupport* winner = nullptr;
    const auto supports = oracle.ordered_supports(x);
    for (const auto& s : supports) {
      if (s.xs.size() != base.xs.size()) continue;
      double dev = 0.0;
      for (int r = 0; r < n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        const double px = base.xs[ur] + (r == i ? step : 0.0);
        const double py = base.ys[ur] + step * columns(r, i);
        dev = std::max({dev, std::abs(s.xs[ur] - px), std::abs(s.ys[ur] - py)});
      }
      if (dev < best) {
        second = best;
        best = dev;
        winner = &s;
      } else {
        second = std::min(second, dev);
      }
    }
    if (winner == nullptr || best > tol || second <= 4.0 * tol) continue;
    for (int r = 0; r < n; ++r) {
      const auto ur = static_cast<std::size_t>(r);
      columns(r, i) = (winner->ys[ur] - base.ys[ur]) / step;
    }
  }
}

}  // namespace

Reconstruction reconstruct(MeasureOracle& oracle, const ReconstructOptions& options) {
  const int n = oracle.n();
  if (n > kMaxIrreducibleOrder) {
    throw DomainError("reconstruct supports order <= " + std::to_string(kMaxIrreducibleOrder));
  }
  const double k = options.k.value_or(oracle.disclosed_norm_bound());
  if (!(k >= 1.0)) throw DomainError("reconstruct: K must be at least 1");
  const ZSetQuery query = [&oracle](const Vector& x) { return oracle.z_set(x); };

  for (int redraw = 0; redraw <= options.max_redraws; ++redraw) {
    const std::uint64_t seed = options.seed + 0x51ed27ULL * static_cast<std::uint64_t>(redraw);
    const ZVector best = max_z_vector(query, n, options.trials, seed);
    const Vector& v = best.v;
    const MeasureSet z_v = oracle.z_set(v);
    const WeightedPointMeasure& nu1 = z_v[0];
    const OrderedSupport base = ordered_support(nu1);
    if (base.xs.size() != static_cast<std::size_t>(n) || !base.strictly_increasing()) continue;
    for (double w : base.weights) {
      if (std::abs(w - 1.0 / n) > 1e-12) {
        throw DomainError("reconstruct needs measures relative to the uniform probability vector");
      }
    }

    // Rank r of the ordered support holds v[rank_to_index[r]]; this is the
    // permutation P2 P1 read off the first coordinates.
    std::vector<int> rank_to_index(static_cast<std::size_t>(n));
    std::iota(rank_to_index.begin(), rank_to_index.end(), 0);
    std::sort(rank_to_index.begin(), rank_to_index.end(), [&](int a, int b) { return v(a) < v(b); });
    bool matches = true;
    for (int r = 0; r < n; ++r) {
      matches = matches && base.xs[static_cast<std::size_t>(r)] == v(rank_to_index[static_cast<std::size_t>(r)]);
    }
    if (!matches) continue;

    double eps = choose_epsilon(z_v, v, k, options.metric);
    for (int halving = 0; halving <= options.max_halvings; ++halving) {
      ColumnPass pass =
          recover_columns(oracle, v, rank_to_index, nu1, base, z_v.size(), eps, k, options.metric);
      if (pass.ok) {
        if (options.refine) refine_columns(oracle, v, rank_to_index, base, pass.columns);
        Reconstruction out;
        out.matrix = std::move(pass.columns);
        out.v = v;
        out.epsilon = eps;
        out.halvings = halving;
        out.redraws = redraw;
        out.queries = oracle.query_count();
        return out;
      }
      eps *= 0.5;
    }
    throw DomainError("reconstruct: no epsilon isolates the perturbed measures after " +
                      std::to_string(options.max_halvings) + " halvings");
  }
  throw DomainError("reconstruct: could not draw a vector with distinct support entries");
}

}  // namespace measrep
