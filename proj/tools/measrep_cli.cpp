#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "measrep/error.hpp"
#include "measrep/graph_props.hpp"
#include "measrep/io.hpp"
#include "measrep/profiles.hpp"
#include "measrep/reconstruction.hpp"

namespace fs = std::filesystem;
using namespace measrep;

namespace {

constexpr const char* kCsvHeader = "idA,idB,k,estimate,tail_bound,count,seed,mode,rep,metric";

struct CommonFlags {
  std::string rep = "adjacency";
  std::string p = "uniform";
  std::string metric = "euclidean";
  std::size_t samples = 500;
  int kmax = 3;
  std::uint64_t seed = 42;
  std::string mode = "sampled";
  std::string out;
  std::string format;
  std::string config;
  std::string base;
};

void add_input_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--rep", f.rep, "adjacency|kirchhoff|normalized (graph inputs)")->capture_default_str();
  cmd->add_option("--p", f.p, "uniform|stationary|<file of n decimals>")->capture_default_str();
  cmd->add_option("--format", f.format, "graph|matrix; default: .mat files are matrices");
}

void add_profile_flags(CLI::App* cmd, CommonFlags& f) {
  add_input_flags(cmd, f);
  cmd->add_option("--metric", f.metric, "euclidean|chebyshev")->capture_default_str();
  cmd->add_option("--samples", f.samples, "test vectors per profile order")->capture_default_str();
  cmd->add_option("--kmax", f.kmax, "orders summed in the action distance")->capture_default_str();
  cmd->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--mode", f.mode, "sampled|exact_orbit")->capture_default_str();
  cmd->add_option("--config", f.config, "key=value file; explicit flags take precedence");
  cmd->add_option("--base", f.base, "exact_orbit base vectors, one per line");
  cmd->add_option("--out", f.out, "output file (default: standard output)");
}

std::optional<InputFormat> forced_format(const CommonFlags& f) {
  if (f.format.empty()) return std::nullopt;
  return parse_input_format(f.format);
}

MeasuredMatrix load(const fs::path& path, const CommonFlags& f) {
  return load_measured_matrix(path, forced_format(f), parse_representation(f.rep), PSpec::parse(f.p));
}

std::vector<Vector> read_base_vectors(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Vector> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    out.push_back(read_vector(ss, path.string() + ":" + std::to_string(number)));
  }
  if (out.empty()) throw IoError(path.string() + ": no base vectors");
  return out;
}

ProfileConfig build_config(const CLI::App* cmd, const CommonFlags& f) {
  ProfileConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw IoError("cannot open " + f.config);
    std::stringstream text;
    text << in.rdbuf();
    cfg = parse_profile_config(text.str());
  }
  if (f.config.empty() || cmd->count("--samples")) cfg.count = f.samples;
  if (f.config.empty() || cmd->count("--seed")) cfg.seed = f.seed;
  if (f.config.empty() || cmd->count("--kmax")) cfg.kmax = f.kmax;
  if (f.config.empty() || cmd->count("--metric")) cfg.metric = parse_base_metric(f.metric);
  if (f.config.empty() || cmd->count("--mode")) cfg.mode = parse_profile_mode(f.mode);
  if (!f.base.empty()) {
    if (cfg.mode != ProfileMode::exact_orbit) throw DomainError("--base requires --mode exact_orbit");
    cfg.base_vectors = read_base_vectors(f.base);
  }
  if (cfg.count < 1) throw DomainError("--samples must be at least 1");
  if (cfg.kmax < 1) throw DomainError("--kmax must be at least 1");
  return cfg;
}

void check_exact_order(const MeasuredMatrix& m, const ProfileConfig& cfg, const fs::path& path) {
  if (cfg.mode == ProfileMode::exact_orbit && m.n() > kMaxExactOrbitOrder) {
    throw DomainError("--mode exact_orbit supports order <= " + std::to_string(kMaxExactOrbitOrder) +
                      "; " + path.string() + " has order " + std::to_string(m.n()));
  }
}

// Output stream: the --out file (appending when `append`) or standard output.
class Sink {
 public:
  Sink(const std::string& path, bool append) {
    if (path.empty()) return;
    const bool fresh = !append || !fs::exists(path) || fs::file_size(path) == 0;
    file_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw IoError("cannot write " + path);
    fresh_ = fresh;
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool fresh() const { return fresh_; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failure");
  }

 private:
  std::ofstream file_;
  bool fresh_ = true;
};

int cmd_dist(const CLI::App* cmd, const CommonFlags& f, const std::string& a_path, const std::string& b_path) {
  const ProfileConfig cfg = build_config(cmd, f);
  const MeasuredMatrix a = load(a_path, f);
  const MeasuredMatrix b = load(b_path, f);
  check_exact_order(a, cfg, a_path);
  check_exact_order(b, cfg, b_path);
  const ActionDistance d = action_distance(a, b, cfg.kmax, cfg);
  const std::string id_a = fs::path(a_path).filename().string();
  const std::string id_b = fs::path(b_path).filename().string();
  auto row = [&](int k, double estimate, double tail) {
    return csv_row({id_a, id_b, std::to_string(k), format_real(estimate), format_real(tail),
                    std::to_string(cfg.count), std::to_string(cfg.seed), to_string(cfg.mode), f.rep,
                    to_string(cfg.metric)});
  };
  Sink sink(f.out, true);
  if (sink.fresh()) sink.stream() << kCsvHeader << '\n';
  sink.stream() << row(1, d.terms.front(), 0.0) << '\n';
  sink.stream() << row(cfg.kmax, d.value, d.tail_bound) << '\n';
  sink.finish();
  std::cerr << "p=" << PSpec::parse(f.p).describe() << '\n';
  return 0;
}

int cmd_dist_matrix(const CLI::App* cmd, const CommonFlags& f, const std::string& dir,
                    const std::string& statistic) {
  const ProfileConfig cfg = build_config(cmd, f);
  if (statistic != "dS" && statistic != "dM") throw DomainError("--distance must be dS or dM");
  if (!fs::is_directory(dir)) throw IoError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() != ".log") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError(dir + " contains no files");

  const std::string log_path = f.out.empty() ? std::string() : f.out + ".log";
  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, std::ios::trunc);
    if (!log) throw IoError("cannot write " + log_path);
  }
  std::vector<std::string> names;
  std::vector<MeasuredMatrix> mats;
  for (const auto& path : files) {
    try {
      MeasuredMatrix m = load(path, f);
      check_exact_order(m, cfg, path);
      mats.push_back(std::move(m));
      names.push_back(path.filename().string());
    } catch (const std::exception& e) {
      std::cerr << "warning: skipping " << path.string() << ": " << e.what() << '\n';
      if (log) log << "skipped " << path.string() << ": " << e.what() << '\n';
    }
  }
  if (mats.size() < 2) throw DomainError("dist-matrix needs at least two parsable files in " + dir);

  const int kmax = statistic == "dS" ? 1 : cfg.kmax;
  const auto count = static_cast<std::ptrdiff_t>(mats.size());
  std::vector<std::vector<ProfileSample>> families(mats.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    families[static_cast<std::size_t>(i)] = profile_family(mats[static_cast<std::size_t>(i)], kmax, cfg);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) pairs.emplace_back(i, j);
  }
  Matrix d = Matrix::Zero(count, count);
  const auto npairs = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t q = 0; q < npairs; ++q) {
    const auto [i, j] = pairs[static_cast<std::size_t>(q)];
    const double v = action_distance(families[i], families[j], cfg.metric).value;
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
  }

  Sink sink(f.out, false);
  std::vector<std::string> header{"id"};
  header.insert(header.end(), names.begin(), names.end());
  sink.stream() << csv_row(header) << '\n';
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> row{names[i]};
    for (std::size_t j = 0; j < names.size(); ++j) {
      row.push_back(format_real(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
    sink.stream() << csv_row(row) << '\n';
  }
  sink.finish();
  return 0;
}

void print_matrix(std::ostream& os, const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << format_real(std::abs(a(i, j)) < 5e-13 ? 0.0 : a(i, j));
    }
    os << '\n';
  }
}

int cmd_reconstruct(const CommonFlags& f, const std::string& path, int trials) {
  const MeasuredMatrix hidden = load(path, f);
  MeasureOracle oracle(hidden);
  ReconstructOptions opts;
  opts.seed = f.seed;
  opts.trials = trials;
  opts.metric = parse_base_metric(f.metric);
  const Reconstruction r = reconstruct(oracle, opts);
  Sink sink(f.out, false);
  std::ostream& os = sink.stream();
  os << "recovered " << r.matrix.rows() << "x" << r.matrix.cols() << '\n';
  print_matrix(os, r.matrix);
  const auto witness = is_switching_equivalent(r.matrix, hidden.matrix(), 1e-6);
  os << "witness";
  if (witness) {
    for (int v : *witness) os << ' ' << v;
  } else {
    os << " none";
  }
  os << '\n';
  os << "epsilon " << format_real(r.epsilon) << '\n';
  os << "queries " << r.queries << '\n';
  sink.finish();
  return witness ? 0 : 2;
}

int cmd_props(const CommonFlags& f, const std::string& path, const std::string& csv_path) {
  const MeasuredMatrix m = load(path, f);
  const auto rows = row_sums_from_measure(m);
  std::optional<SymmetricEigen> eig;
  try {
    eig = jacobi_eigen(m.matrix());
  } catch (const DomainError&) {
  }
  const bool graph_counts =
      detect_format(path, forced_format(f)) == InputFormat::graph && f.rep == "adjacency";

  std::vector<std::vector<std::string>> table;  // property, key, value
  for (const auto& [value, weight] : rows) table.push_back({"degree", format_real(value), format_real(weight)});
  if (eig) {
    for (std::size_t j = eig->values.size(); j-- > 0;) {
      table.push_back({"eigenvalue", std::to_string(eig->values.size() - 1 - j), format_real(eig->values[j])});
    }
  }
  if (graph_counts) {
    const Graph g = read_graph_file(path);
    const auto deg = g.degrees();
    for (int k = 2; k <= 4; ++k) table.push_back({"hom_star", std::to_string(k), std::to_string(hom_star(deg, k))});
  }
  if (eig) {
    std::vector<HomCount> cycles;
    for (int k = 3; k <= 5; ++k) cycles.push_back(hom_cycle(m, k));
    for (int k = 3; k <= 5; ++k) {
      const HomCount& c = cycles[static_cast<std::size_t>(k - 3)];
      table.push_back({"hom_cycle", std::to_string(k), c.rounded ? std::to_string(*c.rounded) : format_real(c.raw)});
    }
    for (int k = 3; k <= 5; ++k) {
      table.push_back({"hom_cycle_raw", std::to_string(k), format_real(cycles[static_cast<std::size_t>(k - 3)].raw)});
    }
  }

  Sink sink(f.out, false);
  std::ostream& os = sink.stream();
  std::string last;
  for (const auto& row : table) {
    if (row[0] != last) {
      os << row[0] << '\n';
      last = row[0];
    }
    os << "  " << row[1] << '\t' << row[2] << '\n';
  }
  if (!eig) os << "spectrum skipped: matrix is not symmetric\n";
  sink.finish();
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw IoError("cannot write " + csv_path);
    csv << "property,key,value\n";
    for (const auto& row : table) csv << csv_row(row) << '\n';
    if (!csv) throw IoError("write failure on " + csv_path);
  }
  return 0;
}

int cmd_norm(const CommonFlags& f, const std::string& path) {
  const MeasuredMatrix m = load(path, f);
  const OperatorNorm norm = norm_inf_to_1(m);
  Sink sink(f.out, false);
  sink.stream() << format_real(norm.value);
  if (!norm.exact) sink.stream() << " (upper bound)";
  sink.stream() << '\n';
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure representations of matrices and graphs"};
  app.require_subcommand(1);
  CommonFlags f;

  std::string a_path, b_path;
  auto* dist = app.add_subcommand("dist", "1-profile and truncated action distance between two inputs");
  dist->add_option("A", a_path)->required();
  dist->add_option("B", b_path)->required();
  add_profile_flags(dist, f);

  std::string dir, statistic = "dM";
  auto* dist_matrix = app.add_subcommand("dist-matrix", "pairwise distances over a directory");
  dist_matrix->add_option("DIR", dir)->required();
  dist_matrix->add_option("--distance", statistic, "dS|dM")->capture_default_str();
  add_profile_flags(dist_matrix, f);

  std::string input;
  int trials = 8;
  auto* recon = app.add_subcommand("reconstruct", "recover a matrix up to switching from Z-set queries");
  recon->add_option("FILE", input)->required();
  add_input_flags(recon, f);
  recon->add_option("--seed", f.seed)->capture_default_str();
  recon->add_option("--trials", trials, "random draws for the maximal Z-set")->capture_default_str();
  recon->add_option("--metric", f.metric)->capture_default_str();
  recon->add_option("--out", f.out);

  std::string csv_path;
  auto* props = app.add_subcommand("props", "degree distribution, spectrum and homomorphism counts");
  props->add_option("FILE", input)->required();
  add_input_flags(props, f);
  props->add_option("--csv", csv_path, "also write the table as CSV");
  props->add_option("--out", f.out);

  auto* norm = app.add_subcommand("norm", "(inf -> 1) operator norm");
  norm->add_option("FILE", input)->required();
  add_input_flags(norm, f);
  norm->add_option("--out", f.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*dist) return cmd_dist(dist, f, a_path, b_path);
    if (*dist_matrix) return cmd_dist_matrix(dist_matrix, f, dir, statistic);
    if (*recon) return cmd_reconstruct(f, input, trials);
    if (*props) return cmd_props(f, input, csv_path);
    if (*norm) return cmd_norm(f, input);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
