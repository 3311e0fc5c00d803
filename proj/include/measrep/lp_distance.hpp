#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "measrep/measure.hpp"

namespace measrep {

/// Metric on R^d underlying the Lévy-Prokhorov distance.
enum class BaseMetric { euclidean, chebyshev };

BaseMetric parse_base_metric(std::string_view name);
std::string to_string(BaseMetric metric);

double point_distance(std::span<const double> a, std::span<const double> b, BaseMetric metric);

/// True iff d_LP(mu, nu) <= eps, tested through the coupling
/// characterization: a bipartite max flow between the atoms, using the pairs
/// at distance <= eps, must carry mass >= 1 - eps.
///
/// Enlargements are closed (d <= eps); see lp_distance.
bool lp_feasible(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu, double eps,
                 BaseMetric metric = BaseMetric::euclidean);

/// Exact Lévy-Prokhorov distance between finitely supported measures.
///
/// The coupled mass F(eps) is a step function of eps that only changes at
/// the pairwise support distances, so the infimum is attained either at a
/// breakpoint or at 1 - F on one of the constant pieces. The result is
/// bitwise symmetric in its arguments.
double lp_distance(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                   BaseMetric metric = BaseMetric::euclidean);

/// Subset-enumeration evaluation of the Lévy-Prokhorov definition, for
/// cross-checking lp_distance. At most 16 distinct support points in total.
double lp_oracle(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                 BaseMetric metric = BaseMetric::euclidean);

/// Distance between members of measure sets: 0 for members that are equal
/// under the set deduplication tolerance, lp_distance otherwise.
double member_distance(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                       BaseMetric metric);

/// Hausdorff distance between finite measure sets under member_distance.
/// Rows of the pairwise matrix are evaluated in parallel with OpenMP and
/// pruned against the running row minimum; the result is bit-identical to
/// hausdorff_reference.
double hausdorff(const MeasureSet& x, const MeasureSet& y,
                 BaseMetric metric = BaseMetric::euclidean);

/// Serial evaluation of the full pairwise distance matrix.
double hausdorff_reference(const MeasureSet& x, const MeasureSet& y,
                           BaseMetric metric = BaseMetric::euclidean);

/// tau^(1/2) * k^(3/4) where tau is the largest coordinatewise weighted mean
/// absolute difference of two jointly distributed R^k-valued variables.
/// `x_values[i]` and `y_values[i]` are the values on outcome i, which has
/// probability `weights[i]`.
double coupling_lp_bound(const std::vector<std::vector<double>>& x_values,
                         const std::vector<std::vector<double>>& y_values,
                         std::span<const double> weights);

}  // namespace measrep
