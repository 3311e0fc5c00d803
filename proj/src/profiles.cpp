#include "measrep/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "measrep/error.hpp"

namespace measrep {

ProfileMode parse_profile_mode(std::string_view name) {
  if (name == "sampled") return ProfileMode::sampled;
  if (name == "exact_orbit") return ProfileMode::exact_orbit;
  throw DomainError("unknown profile mode '" + std::string(name) + "' (sampled|exact_orbit)");
}

std::string to_string(ProfileMode mode) {
  return mode == ProfileMode::sampled ? "sampled" : "exact_orbit";
}

std::string serialize(const ProfileConfig& cfg) {
  std::ostringstream os;
  os << "count=" << cfg.count << '\n'
     << "seed=" << cfg.seed << '\n'
     << "kmax=" << cfg.kmax << '\n'
     << "metric=" << to_string(cfg.metric) << '\n'
     << "mode=" << to_string(cfg.mode) << '\n';
  return os.str();
}

namespace {

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
  T out{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw DomainError("config: bad integer for '" + std::string(key) + "': '" +
                      std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ProfileConfig parse_profile_config(std::string_view text) {
  ProfileConfig cfg;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "count") {
      cfg.count = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "kmax") {
      cfg.kmax = parse_integer<int>(key, value);
    } else if (key == "metric") {
      cfg.metric = parse_base_metric(value);
    } else if (key == "mode") {
      cfg.mode = parse_profile_mode(value);
    } else {
      throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  return cfg;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unique positive root of x^(d+1) = x + 1.
double generalized_golden_ratio(int d) {
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
  return phi;
}

}  // namespace

Vector canonical_vector(int n, std::size_t index, std::uint64_t seed) {
  if (n <= 0) throw DomainError("canonical_vector: order must be positive");
  const auto un = static_cast<std::size_t>(n);
  if (index == 0) return Vector::Ones(n);
  if (index <= un) return Vector::Unit(n, static_cast<Eigen::Index>(index - 1));
  Vector v(n);
  if (index <= un + kLowDiscrepancyBlock) {
    const double j = static_cast<double>(index - un);
    const double phi = generalized_golden_ratio(n);
    double alpha = 1.0;
    for (int c = 0; c < n; ++c) {
      alpha /= phi;
      const double u = 0.5 + j * alpha;
      v(c) = 2.0 * (u - std::floor(u)) - 1.0;
    }
    return v;
  }
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  for (int c = 0; c < n; ++c) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v(c) = 2.0 * u - 1.0;
  }
  return v;
}

std::vector<Vector> canonical_base_vectors(int n, std::size_t count, std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) out.push_back(canonical_vector(n, s, seed));
  return out;
}

std::vector<TestTuple> canonical_tuples(int n, int k, std::size_t count, std::uint64_t seed) {
  if (k < 1) throw DomainError("profile order k must be at least 1");
  if (count < 1) throw DomainError("profile sample count must be at least 1");
  std::vector<TestTuple> tuples(count);
  for (std::size_t t = 0; t < count; ++t) {
    tuples[t].reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
      tuples[t].push_back(canonical_vector(n, static_cast<std::size_t>(c) * count + t, seed));
    }
  }
  return tuples;
}

WeightedPointMeasure tuple_measure(const MeasuredMatrix& m, const TestTuple& tuple) {
  if (tuple.empty()) throw DomainError("tuple_measure: empty tuple");
  const auto n = static_cast<std::size_t>(m.n());
  const std::size_t dim = 2 * tuple.size();
  std::vector<double> points(n * dim);
  for (std::size_t c = 0; c < tuple.size(); ++c) {
    const Vector& z = tuple[c];
    if (z.size() != m.n()) throw DomainError("tuple_measure: vector length does not match order");
    const Vector az = m.matrix() * z;
    for (std::size_t i = 0; i < n; ++i) {
      points[i * dim + 2 * c] = z(static_cast<Eigen::Index>(i));
      points[i * dim + 2 * c + 1] = az(static_cast<Eigen::Index>(i));
    }
  }
  return WeightedPointMeasure(dim, points, std::span<const double>(m.p().data(), m.p().size()));
}

std::vector<WeightedPointMeasure> profile_measures(const MeasuredMatrix& m,
                                                   const std::vector<TestTuple>& tuples) {
  std::vector<std::optional<WeightedPointMeasure>> slots(tuples.size());
  const auto count = static_cast<std::ptrdiff_t>(tuples.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    slots[static_cast<std::size_t>(t)].emplace(tuple_measure(m, tuples[static_cast<std::size_t>(t)]));
  }
  std::vector<WeightedPointMeasure> out;
  out.reserve(tuples.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<WeightedPointMeasure> profile_measures_reference(const MeasuredMatrix& m,
                                                             const std::vector<TestTuple>& tuples) {
  std::vector<WeightedPointMeasure> out;
  out.reserve(tuples.size());
  for (const auto& tuple : tuples) out.push_back(tuple_measure(m, tuple));
  return out;
}

ProfileSample sample_profile(const MeasuredMatrix& m, int k, std::size_t count,
                             std::uint64_t seed) {
  ProfileSample sample;
  sample.k = k;
  sample.seed = seed;
  sample.mode = ProfileMode::sampled;
  sample.base_vectors = canonical_tuples(m.n(), k, count, seed);
  sample.measures = MeasureSet(2 * static_cast<std::size_t>(k));
  for (auto& mu : profile_measures(m, sample.base_vectors)) sample.measures.insert(std::move(mu));
  return sample;
}

ProfileSample exact_orbit_profile(const MeasuredMatrix& m, const std::vector<Vector>& base) {
  if (m.n() > kMaxExactOrbitOrder) {
    throw DomainError("exact-orbit profiles support order <= " +
                      std::to_string(kMaxExactOrbitOrder) + ", got " + std::to_string(m.n()));
  }
  if (base.empty()) throw DomainError("exact-orbit profile needs at least one base vector");
  ProfileSample sample;
  sample.k = 1;
  sample.mode = ProfileMode::exact_orbit;
  sample.measures = MeasureSet(2);
  std::vector<std::optional<MeasureSet>> orbits(base.size());
  const auto count = static_cast<std::ptrdiff_t>(base.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < count; ++b) {
    orbits[static_cast<std::size_t>(b)].emplace(z_set(m, base[static_cast<std::size_t>(b)]));
  }
  for (std::size_t b = 0; b < base.size(); ++b) {
    sample.base_vectors.push_back(TestTuple{base[b]});
    for (const auto& mu : *orbits[b]) sample.measures.insert(mu);
  }
  return sample;
}

ProfileSample one_profile(const MeasuredMatrix& m, const ProfileConfig& cfg) {
  if (cfg.mode == ProfileMode::sampled) {
    if (cfg.base_vectors) throw DomainError("explicit base vectors require exact_orbit mode");
    return sample_profile(m, 1, cfg.count, cfg.seed);
  }
  std::vector<Vector> base =
      cfg.base_vectors ? *cfg.base_vectors : canonical_base_vectors(m.n(), cfg.count, cfg.seed);
  for (Vector& v : base) std::sort(v.begin(), v.end());
  ProfileSample sample = exact_orbit_profile(m, base);
  sample.seed = cfg.seed;
  return sample;
}

double one_profile_distance(const MeasuredMatrix& a, const MeasuredMatrix& b,
                            const ProfileConfig& cfg) {
  const ProfileSample sa = one_profile(a, cfg);
  const ProfileSample sb = one_profile(b, cfg);
  return hausdorff(sa.measures, sb.measures, cfg.metric);
}

std::vector<ProfileSample> profile_family(const MeasuredMatrix& m, int kmax,
                                          const ProfileConfig& cfg) {
  if (kmax < 1) throw DomainError("kmax must be at least 1");
  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(kmax));
  out.push_back(one_profile(m, cfg));
  for (int k = 2; k <= kmax; ++k) out.push_back(sample_profile(m, k, cfg.count, cfg.seed));
  return out;
}

ActionDistance action_distance(const std::vector<ProfileSample>& a,
                               const std::vector<ProfileSample>& b, BaseMetric metric) {
  if (a.size() != b.size() || a.empty()) {
    throw DomainError("action_distance: profile families must be nonempty and of equal length");
  }
  ActionDistance out;
  double weight = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double term = hausdorff(a[k].measures, b[k].measures, metric);
    out.terms.push_back(term);
    weight *= 0.5;
    out.value += weight * term;
  }
  out.tail_bound = weight;
  return out;
}

ActionDistance action_distance(const MeasuredMatrix& a, const MeasuredMatrix& b, int kmax,
                               const ProfileConfig& cfg) {
  return action_distance(profile_family(a, kmax, cfg), profile_family(b, kmax, cfg), cfg.metric);
}

}  // namespace measrep
