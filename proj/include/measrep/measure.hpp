#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace measrep {

/// Tolerance under which two atoms of one measure are the same point.
inline constexpr double kAtomMergeTol = 1e-12;
/// Tolerance under which two measures are the same member of a MeasureSet.
inline constexpr double kSetDedupTol = 1e-9;
/// Allowed deviation of the total mass from one.
inline constexpr double kMassTol = 1e-12;

/// Finitely supported probability measure on R^d.
///
/// Atoms are stored in canonical form: points are pairwise distinct
/// (coinciding points are merged at construction) and sorted
/// lexicographically. Points live in one flat row-major buffer.
class WeightedPointMeasure {
 public:
  /// `points` holds `weights.size()` points of `dim` coordinates each.
  /// Throws DomainError if the weights are not a probability vector.
  WeightedPointMeasure(std::size_t dim, std::span<const double> points,
                       std::span<const double> weights);

  static WeightedPointMeasure dirac(std::span<const double> point);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }

  std::span<const double> point(std::size_t atom) const {
    return {points_.data() + atom * dim_, dim_};
  }
  double weight(std::size_t atom) const { return weights_[atom]; }

  std::span<const double> weights() const { return weights_; }
  std::span<const double> points() const { return points_; }

 private:
  std::size_t dim_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// Atom lists match pairwise (points componentwise and weights within tol).
/// Throws DomainError on dimension mismatch.
bool measure_equal(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu,
                   double tol);

/// Finite set of measures of a common dimension, deduplicated under
/// measure_equal with kSetDedupTol. Members keep insertion order.
class MeasureSet {
 public:
  explicit MeasureSet(std::size_t dim) : dim_(dim) {}

  /// Returns true if `mu` was new.
  bool insert(WeightedPointMeasure mu);
  bool contains(const WeightedPointMeasure& mu) const;

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const WeightedPointMeasure& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<WeightedPointMeasure>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  struct Key {
    double fingerprint;
    double radius;
  };
  Key key_of(const WeightedPointMeasure& mu) const;
  std::ptrdiff_t find(const WeightedPointMeasure& mu, const Key& key) const;

  std::size_t dim_;
  std::vector<WeightedPointMeasure> members_;
  // (fingerprint, member index), sorted by fingerprint.
  std::vector<std::pair<double, std::size_t>> index_;
};

/// Text form: line `d m`, then m lines `w x_1 ... x_d`, 17 significant digits.
void write_measure(std::ostream& os, const WeightedPointMeasure& mu);
WeightedPointMeasure read_measure(std::istream& is);

/// Locale-independent `%.17g` formatting.
std::string format_real(double value);

}  // namespace measrep
