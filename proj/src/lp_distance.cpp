#include "measrep/lp_distance.hpp"

#include <algorithm>
#include <cmath>

#include "bipartite_flow.hpp"
#include "measrep/error.hpp"

namespace measrep {

namespace {

// Slack on mass comparisons between a flow value and 1 - eps.
constexpr double kFlowSlack = 1e-12;

void require_same_dim(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu) {
  if (mu.dim() != nu.dim()) {
    throw DomainError("Lévy-Prokhorov distance: dimension mismatch (" + std::to_string(mu.dim()) +
                      " vs " + std::to_string(nu.dim()) + ")");
  }
}

// Total order on measures, used to evaluate every pair in a fixed argument
// order so the distance is bitwise symmetric.
bool canonical_before(const WeightedPointMeasure& a, const WeightedPointMeasure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto pa = a.points();
  const auto pb = b.points();
  if (!std::equal(pa.begin(), pa.end(), pb.begin())) {
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  }
  const auto wa = a.weights();
  const auto wb = b.weights();
  return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
}

class Coupling {
 public:
  Coupling(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu, BaseMetric metric)
      : mu_(mu), nu_(nu), dist_(mu.size() * nu.size()) {
    for (std::size_t i = 0; i < mu.size(); ++i) {
      for (std::size_t j = 0; j < nu.size(); ++j) {
        dist_[i * nu.size() + j] = point_distance(mu.point(i), nu.point(j), metric);
      }
    }
  }

  // Largest mass a coupling can put on pairs at distance <= eps.
  double coupled_mass(double eps) const {
    detail::BipartiteFlow flow(mu_.weights(), nu_.weights());
    for (std::size_t i = 0; i < mu_.size(); ++i) {
      for (std::size_t j = 0; j < nu_.size(); ++j) {
        if (dist_[i * nu_.size() + j] <= eps) flow.connect(i, j);
      }
    }
    return flow.solve();
  }

  double deficit(double eps) const {
    const double d = 1.0 - coupled_mass(eps);
    return d < kFlowSlack ? 0.0 : d;
  }

  std::vector<double> breakpoints() const {
    std::vector<double> t;
    t.reserve(dist_.size() + 1);
    t.push_back(0.0);
    for (double d : dist_) {
      if (d > 0.0 && d < 1.0) t.push_back(d);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  }

 private:
  const WeightedPointMeasure& mu_;
  const WeightedPointMeasure& nu_;
  std::vector<double> dist_;
};

double lp_distance_ordered(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                           BaseMetric metric) {
  const Coupling coupling(mu, nu, metric);
  const std::vector<double> t = coupling.breakpoints();
  // On [t[k], t[k+1]) the least feasible eps is max(t[k], deficit(t[k])).
  // t[k] increases and deficit(t[k]) decreases with k, so binary search for
  // the first k where t[k] dominates.
  std::size_t lo = 0;
  std::size_t hi = t.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (t[mid] >= coupling.deficit(t[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  // Below t[lo] the deficit dominates and is smallest at t[lo - 1].
  double best = (lo > 0) ? coupling.deficit(t[lo - 1]) : 1.0;
  if (lo < t.size()) best = std::min(best, t[lo]);
  return std::clamp(best, 0.0, 1.0);
}

}  // namespace

BaseMetric parse_base_metric(std::string_view name) {
  if (name == "euclidean") return BaseMetric::euclidean;
  if (name == "chebyshev") return BaseMetric::chebyshev;
  throw DomainError("unknown metric '" + std::string(name) + "' (euclidean|chebyshev)");
}

std::string to_string(BaseMetric metric) {
  return metric == BaseMetric::euclidean ? "euclidean" : "chebyshev";
}

double point_distance(std::span<const double> a, std::span<const double> b, BaseMetric metric) {
  double acc = 0.0;
  if (metric == BaseMetric::euclidean) {
    for (std::size_t c = 0; c < a.size(); ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
    return std::sqrt(acc);
  }
  for (std::size_t c = 0; c < a.size(); ++c) acc = std::max(acc, std::abs(a[c] - b[c]));
  return acc;
}

bool lp_feasible(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu, double eps,
                 BaseMetric metric) {
  require_same_dim(mu, nu);
  if (eps < 0.0) throw DomainError("lp_feasible: eps must be nonnegative");
  if (eps >= 1.0) return true;
  const bool swap = canonical_before(nu, mu);
  const Coupling coupling(swap ? nu : mu, swap ? mu : nu, metric);
  return coupling.coupled_mass(eps) >= 1.0 - eps - kFlowSlack;
}

double lp_distance(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                   BaseMetric metric) {
  require_same_dim(mu, nu);
  return canonical_before(nu, mu) ? lp_distance_ordered(nu, mu, metric)
                                  : lp_distance_ordered(mu, nu, metric);
}

double member_distance(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                       BaseMetric metric) {
  if (measure_equal(mu, nu, kSetDedupTol)) return 0.0;
  return lp_distance(mu, nu, metric);
}

namespace {

void require_hausdorff_inputs(const MeasureSet& x, const MeasureSet& y) {
  if (x.empty() || y.empty()) throw DomainError("hausdorff: measure sets must be nonempty");
  if (x.dim() != y.dim()) {
    throw DomainError("hausdorff: dimension mismatch (" + std::to_string(x.dim()) + " vs " +
                      std::to_string(y.dim()) + ")");
  }
}

// inf over `to` of member_distance(from[i], .) for every i. A pair is only
// evaluated exactly when it can undercut the running minimum, so the row
// minima equal those of the full matrix.
std::vector<double> directed_minima(const MeasureSet& from, const MeasureSet& to,
                                    BaseMetric metric) {
  const auto rows = static_cast<std::ptrdiff_t>(from.size());
  std::vector<double> minima(from.size(), 1.0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const WeightedPointMeasure& a = from[static_cast<std::size_t>(i)];
    double best = 1.0;
    for (const WeightedPointMeasure& b : to) {
      if (measure_equal(a, b, kSetDedupTol)) {
        best = 0.0;
        break;
      }
      if (!lp_feasible(a, b, best, metric)) continue;
      best = std::min(best, lp_distance(a, b, metric));
      if (best == 0.0) break;
    }
    minima[static_cast<std::size_t>(i)] = best;
  }
  return minima;
}

}  // namespace

double hausdorff(const MeasureSet& x, const MeasureSet& y, BaseMetric metric) {
  require_hausdorff_inputs(x, y);
  const auto forward = directed_minima(x, y, metric);
  const auto backward = directed_minima(y, x, metric);
  const double a = *std::max_element(forward.begin(), forward.end());
  const double b = *std::max_element(backward.begin(), backward.end());
  return std::max(a, b);
}

double hausdorff_reference(const MeasureSet& x, const MeasureSet& y, BaseMetric metric) {
  require_hausdorff_inputs(x, y);
  std::vector<double> d(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) d[i * y.size() + j] = member_distance(x[i], y[j], metric);
  }
  double sup_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double inf = 1.0;
    for (std::size_t j = 0; j < y.size(); ++j) inf = std::min(inf, d[i * y.size() + j]);
    sup_x = std::max(sup_x, inf);
  }
  double sup_y = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    double inf = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) inf = std::min(inf, d[i * y.size() + j]);
    sup_y = std::max(sup_y, inf);
  }
  return std::max(sup_x, sup_y);
}

double coupling_lp_bound(const std::vector<std::vector<double>>& x_values,
                         const std::vector<std::vector<double>>& y_values,
                         std::span<const double> weights) {
  if (x_values.size() != y_values.size() || x_values.size() != weights.size()) {
    throw DomainError("coupling_lp_bound: value lists and weights must have equal length");
  }
  if (x_values.empty()) throw DomainError("coupling_lp_bound: no outcomes");
  const std::size_t k = x_values.front().size();
  if (k == 0) throw DomainError("coupling_lp_bound: zero-dimensional values");
  std::vector<double> mean_abs(k, 0.0);
  for (std::size_t i = 0; i < x_values.size(); ++i) {
    if (x_values[i].size() != k || y_values[i].size() != k) {
      throw DomainError("coupling_lp_bound: inconsistent value dimensions");
    }
    for (std::size_t c = 0; c < k; ++c) {
      mean_abs[c] += weights[i] * std::abs(x_values[i][c] - y_values[i][c]);
    }
  }
  const double tau = *std::max_element(mean_abs.begin(), mean_abs.end());
  return std::sqrt(tau) * std::pow(static_cast<double>(k), 0.75);
}

}  // namespace measrep
