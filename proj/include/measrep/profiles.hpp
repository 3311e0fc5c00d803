#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "measrep/lp_distance.hpp"
#include "measrep/matrix.hpp"
#include "measrep/measure.hpp"

namespace measrep {

enum class ProfileMode { sampled, exact_orbit };

ProfileMode parse_profile_mode(std::string_view name);
std::string to_string(ProfileMode mode);

/// Sampling configuration shared by both sides of a profile comparison.
struct ProfileConfig {
  std::size_t count = 500;
  std::uint64_t seed = 42;
  int kmax = 3;
  BaseMetric metric = BaseMetric::euclidean;
  ProfileMode mode = ProfileMode::sampled;
  /// Exact-orbit mode only: replaces the canonical family as base vectors.
  std::optional<std::vector<Vector>> base_vectors;
};

/// `key=value` lines for count, seed, kmax, metric and mode.
std::string serialize(const ProfileConfig& cfg);
/// Inverse of serialize; blank lines and `#` comments are skipped. Keys that
/// are absent keep their defaults.
ProfileConfig parse_profile_config(std::string_view text);

/// k test vectors (Z_1, ..., Z_k) with entries in [-1, 1].
using TestTuple = std::vector<Vector>;

struct ProfileSample {
  int k = 1;
  std::vector<TestTuple> base_vectors;
  MeasureSet measures{2};
  std::uint64_t seed = 0;
  ProfileMode mode = ProfileMode::sampled;
};

/// Number of quasi-random vectors that follow the all-ones and basis vectors
/// in the canonical stream.
inline constexpr std::size_t kLowDiscrepancyBlock = 64;

/// Element `index` of the canonical test-vector stream for order n: the
/// all-ones vector, then e_0..e_{n-1}, then kLowDiscrepancyBlock points of a
/// Kronecker (generalized golden ratio) sequence mapped to [-1,1]^n, then
/// uniform vectors drawn from a generator keyed on (seed, index).
Vector canonical_vector(int n, std::size_t index, std::uint64_t seed);

/// First `count` elements of the canonical stream.
std::vector<Vector> canonical_base_vectors(int n, std::size_t count, std::uint64_t seed);

/// Tuple t of order k takes its c-th vector from stream position c*count + t,
/// so the first component of every tuple is the order-1 family.
std::vector<TestTuple> canonical_tuples(int n, int k, std::size_t count, std::uint64_t seed);

/// Joint law of (Z_1, A Z_1, ..., Z_k, A Z_k) under p, a measure on R^(2k).
WeightedPointMeasure tuple_measure(const MeasuredMatrix& m, const TestTuple& tuple);

/// tuple_measure for every tuple, evaluated in parallel with OpenMP.
std::vector<WeightedPointMeasure> profile_measures(const MeasuredMatrix& m,
                                                   const std::vector<TestTuple>& tuples);
/// Serial evaluation of profile_measures.
std::vector<WeightedPointMeasure> profile_measures_reference(const MeasuredMatrix& m,
                                                             const std::vector<TestTuple>& tuples);

ProfileSample sample_profile(const MeasuredMatrix& m, int k, std::size_t count,
                             std::uint64_t seed);

inline constexpr int kMaxExactOrbitOrder = 7;

/// Union of z_set(m, x) over the base vectors. Order <= 7.
ProfileSample exact_orbit_profile(const MeasuredMatrix& m, const std::vector<Vector>& base);

/// Order-1 profile a configuration compares: the canonical family (sampled
/// mode) or the orbit closure of the sorted base family (exact-orbit mode).
ProfileSample one_profile(const MeasuredMatrix& m, const ProfileConfig& cfg);

/// Hausdorff distance between the order-1 profiles of the two matrices.
double one_profile_distance(const MeasuredMatrix& a, const MeasuredMatrix& b,
                            const ProfileConfig& cfg);

struct ActionDistance {
  double value = 0.0;
  /// Bound on the omitted terms k > kmax.
  double tail_bound = 0.0;
  /// terms[k - 1] is the Hausdorff distance between the order-k profiles.
  std::vector<double> terms;
};

/// Profiles of orders 1..kmax: entry 0 is one_profile(m, cfg), orders k >= 2
/// are always sampled.
std::vector<ProfileSample> profile_family(const MeasuredMatrix& m, int kmax,
                                          const ProfileConfig& cfg);

/// sum_k 2^-k d_H over two families of equal length.
ActionDistance action_distance(const std::vector<ProfileSample>& a,
                               const std::vector<ProfileSample>& b, BaseMetric metric);

/// sum_{k=1}^{kmax} 2^-k d_H(S_k(A), S_k(B)). The k = 1 term is exactly
/// one_profile_distance(a, b, cfg).
ActionDistance action_distance(const MeasuredMatrix& a, const MeasuredMatrix& b, int kmax,
                               const ProfileConfig& cfg);

}  // namespace measrep
