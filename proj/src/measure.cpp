#include "measrep/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "measrep/error.hpp"

namespace measrep {

namespace {

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool points_close(std::span<const double> a, std::span<const double> b, double tol) {
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (std::abs(a[c] - b[c]) > tol) return false;
  }
  return true;
}

// Coefficients of the linear functional used to fingerprint measures.
double coordinate_coefficient(std::size_t c) {
  return 1.0 / (1.0 + 0.6180339887498949 * static_cast<double>(c + 1));
}

}  // namespace

WeightedPointMeasure::WeightedPointMeasure(std::size_t dim, std::span<const double> points,
                                           std::span<const double> weights)
    : dim_(dim) {
  if (dim == 0) throw DomainError("measure dimension must be positive");
  const std::size_t m = weights.size();
  if (m == 0) throw DomainError("measure needs at least one atom");
  if (points.size() != m * dim) {
    throw DomainError("measure point buffer has " + std::to_string(points.size()) +
                      " values, expected " + std::to_string(m * dim));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("atom weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw DomainError("atom weights sum to " + format_real(total) + ", not 1");
  }
  for (double x : points) {
    if (!std::isfinite(x)) throw DomainError("atom coordinates must be finite");
  }

  auto pt = [&](std::size_t i) { return points.subspan(i * dim, dim); };
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(pt(a), pt(b)); });

  points_.reserve(m * dim);
  weights_.reserve(m);
  for (std::size_t idx : order) {
    const auto p = pt(idx);
    bool merged = false;
    // Representatives are sorted, so only those whose first coordinate is
    // within tolerance can coincide with p.
    for (std::size_t r = weights_.size(); r-- > 0;) {
      const auto q = this->point(r);
      if (q[0] < p[0] - kAtomMergeTol) break;
      if (points_close(p, q, kAtomMergeTol)) {
        weights_[r] += weights[idx];
        merged = true;
        break;
      }
    }
    if (!merged) {
      points_.insert(points_.end(), p.begin(), p.end());
      weights_.push_back(weights[idx]);
    }
  }
}

WeightedPointMeasure WeightedPointMeasure::dirac(std::span<const double> point) {
  const double one = 1.0;
  return WeightedPointMeasure(point.size(), point, std::span<const double>(&one, 1));
}

bool measure_equal(const WeightedPointMeasure& mu, const WeightedPointMeasure& nu, double tol) {
  if (mu.dim() != nu.dim()) {
    throw DomainError("measure_equal: dimension mismatch (" + std::to_string(mu.dim()) +
                      " vs " + std::to_string(nu.dim()) + ")");
  }
  if (mu.size() != nu.size()) return false;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (std::abs(mu.weight(a) - nu.weight(a)) > tol) return false;
    if (!points_close(mu.point(a), nu.point(a), tol)) return false;
  }
  return true;
}

MeasureSet::Key MeasureSet::key_of(const WeightedPointMeasure& mu) const {
  // Any nu within kSetDedupTol of mu has a fingerprint within `radius`:
  // |w g - w' g'| <= |w - w'| |g| + w' |g - g'|.
  double f = 0.0;
  double abs_g = 0.0;
  double alpha_sum = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) alpha_sum += coordinate_coefficient(c);
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const auto p = mu.point(a);
    double g = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) g += coordinate_coefficient(c) * p[c];
    f += mu.weight(a) * g;
    abs_g += std::abs(g);
  }
  const double m = static_cast<double>(mu.size());
  const double radius = kSetDedupTol * (abs_g + (1.0 + m * kSetDedupTol) * alpha_sum) +
                        1e-12 * (abs_g + 1.0);
  return {f, radius};
}

std::ptrdiff_t MeasureSet::find(const WeightedPointMeasure& mu, const Key& key) const {
  auto lo = std::lower_bound(index_.begin(), index_.end(), key.fingerprint - key.radius,
                             [](const auto& e, double v) { return e.first < v; });
  for (auto it = lo; it != index_.end() && it->first <= key.fingerprint + key.radius; ++it) {
    if (measure_equal(members_[it->second], mu, kSetDedupTol)) {
      return static_cast<std::ptrdiff_t>(it->second);
    }
  }
  return -1;
}

bool MeasureSet::insert(WeightedPointMeasure mu) {
  if (mu.dim() != dim_) {
    throw DomainError("MeasureSet: member of dimension " + std::to_string(mu.dim()) +
                      " in a set of dimension " + std::to_string(dim_));
  }
  const Key key = key_of(mu);
  if (find(mu, key) >= 0) return false;
  auto pos = std::upper_bound(index_.begin(), index_.end(), key.fingerprint,
                              [](double v, const auto& e) { return v < e.first; });
  index_.insert(pos, {key.fingerprint, members_.size()});
  members_.push_back(std::move(mu));
  return true;
}

bool MeasureSet::contains(const WeightedPointMeasure& mu) const {
  if (mu.dim() != dim_) return false;
  return find(mu, key_of(mu)) >= 0;
}

std::string format_real(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_measure(std::ostream& os, const WeightedPointMeasure& mu) {
  os << mu.dim() << ' ' << mu.size() << '\n';
  for (std::size_t a = 0; a < mu.size(); ++a) {
    os << format_real(mu.weight(a));
    for (double x : mu.point(a)) os << ' ' << format_real(x);
    os << '\n';
  }
}

namespace {

double parse_real(const std::string& token, std::size_t line) {
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw IoError("line " + std::to_string(line) + ": not a number: '" + token + "'");
  }
  return v;
}

}  // namespace

WeightedPointMeasure read_measure(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::istringstream {
    if (!std::getline(is, line)) {
      throw IoError("line " + std::to_string(lineno + 1) + ": unexpected end of measure");
    }
    ++lineno;
    return std::istringstream(line);
  };
  std::size_t dim = 0;
  std::size_t m = 0;
  {
    auto ss = next_line();
    if (!(ss >> dim >> m) || dim == 0 || m == 0) {
      throw IoError("line 1: expected header 'd m'");
    }
  }
  std::vector<double> points;
  std::vector<double> weights;
  points.reserve(dim * m);
  weights.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    auto ss = next_line();
    std::string tok;
    std::vector<double> row;
    while (ss >> tok) row.push_back(parse_real(tok, lineno));
    if (row.size() != dim + 1) {
      throw IoError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) +
                    " values, found " + std::to_string(row.size()));
    }
    weights.push_back(row[0]);
    points.insert(points.end(), row.begin() + 1, row.end());
  }
  return WeightedPointMeasure(dim, points, weights);
}

}  // namespace measrep
