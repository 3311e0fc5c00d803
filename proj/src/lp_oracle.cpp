// Lévy-Prokhorov distance straight from its definition: for every candidate
// eps, every Borel set U is reduced to the union of support points it
// contains and both inequalities are checked by enumeration.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "measrep/error.hpp"
#include "measrep/lp_distance.hpp"

namespace measrep {

namespace {

constexpr std::size_t kMaxOracleAtoms = 16;
constexpr double kCheckSlack = 1e-12;

struct SupportUnion {
  std::vector<std::vector<double>> points;
  std::vector<double> mass_mu;
  std::vector<double> mass_nu;
};

SupportUnion merge_supports(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu) {
  SupportUnion u;
  auto add = [&u](std::span<const double> p, double w, bool first) {
    for (std::size_t k = 0; k < u.points.size(); ++k) {
      bool same = true;
      for (std::size_t c = 0; c < p.size(); ++c) same = same && std::abs(u.points[k][c] - p[c]) <= kAtomMergeTol;
      if (same) {
        (first ? u.mass_mu : u.mass_nu)[k] += w;
        return;
      }
    }
    u.points.emplace_back(p.begin(), p.end());
    u.mass_mu.push_back(first ? w : 0.0);
    u.mass_nu.push_back(first ? 0.0 : w);
  };
  for (std::size_t a = 0; a < mu.size(); ++a) add(mu.point(a), mu.weight(a), true);
  for (std::size_t a = 0; a < nu.size(); ++a) add(nu.point(a), nu.weight(a), false);
  return u;
}

// Sums of all subsets of `values`, sorted and deduplicated.
std::vector<double> subset_sums(const std::vector<double>& values) {
  std::vector<double> sums{0.0};
  for (double v : values) {
    const std::size_t n = sums.size();
    for (std::size_t i = 0; i < n; ++i) sums.push_back(sums[i] + v);
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

class DefinitionCheck {
 public:
  DefinitionCheck(SupportUnion support, BaseMetric metric) : s_(std::move(support)) {
    const std::size_t n = s_.points.size();
    dist_.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) dist_[a * n + b] = point_distance(s_.points[a], s_.points[b], metric);
    }
    const std::size_t subsets = std::size_t{1} << n;
    sum_mu_.assign(subsets, 0.0);
    sum_nu_.assign(subsets, 0.0);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      sum_mu_[mask] = sum_mu_[mask & (mask - 1)] + s_.mass_mu[low];
      sum_nu_[mask] = sum_nu_[mask & (mask - 1)] + s_.mass_nu[low];
    }
  }

  std::size_t point_count() const { return s_.points.size(); }
  double distance(std::size_t a, std::size_t b) const { return dist_[a * point_count() + b]; }

  // eta1(U) <= eta2(U^eps) + eps and eta2(U) <= eta1(U^eps) + eps for all U.
  bool holds(double eps) const {
    const std::size_t n = point_count();
    std::vector<std::uint32_t> near(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (distance(a, b) <= eps) near[a] |= std::uint32_t{1} << b;
      }
    }
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::uint32_t> enlarged(subsets, 0);
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      enlarged[mask] = enlarged[mask & (mask - 1)] | near[low];
      const std::uint32_t grown = enlarged[mask];
      if (sum_mu_[mask] > sum_nu_[grown] + eps + kCheckSlack) return false;
      if (sum_nu_[mask] > sum_mu_[grown] + eps + kCheckSlack) return false;
    }
    return true;
  }

 private:
  SupportUnion s_;
  std::vector<double> dist_;
  std::vector<double> sum_mu_;
  std::vector<double> sum_nu_;
};

}  // namespace

double lp_oracle(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                 BaseMetric metric) {
  if (mu.dim() != nu.dim()) throw DomainError("lp_oracle: dimension mismatch");
  if (mu.size() + nu.size() > kMaxOracleAtoms) {
    throw DomainError("lp_oracle: at most " + std::to_string(kMaxOracleAtoms) +
                      " support atoms in total");
  }
  const DefinitionCheck check(merge_supports(mu, nu), metric);

  std::vector<double> candidates{0.0, 1.0};
  for (std::size_t a = 0; a < check.point_count(); ++a) {
    for (std::size_t b = a + 1; b < check.point_count(); ++b) candidates.push_back(check.distance(a, b));
  }
  std::vector<double> all_weights(mu.weights().begin(), mu.weights().end());
  all_weights.insert(all_weights.end(), nu.weights().begin(), nu.weights().end());
  for (double s : subset_sums(all_weights)) candidates.push_back(1.0 - s);
  std::erase_if(candidates, [](double c) { return c < 0.0 || c > 1.0; });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Feasibility is monotone in eps; find the least feasible candidate.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;  // eps = 1 always holds
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (check.holds(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace measrep
