#include "measrep/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "measrep/error.hpp"
#include "measrep/measure.hpp"

namespace measrep {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Non-empty lines with comments removed.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream ss(text);
    Line line{number, {}};
    for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read failure");
  return out;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw IoError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view source, std::size_t line, const std::string& tok) {
  T value{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    fail(source, line, "not a number: '" + tok + "'");
  }
  return value;
}

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace

Graph read_graph(std::istream& in, std::string_view source) {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  for (const Line& line : tokenize(in)) {
    if (line.tokens.size() > 2) fail(source, line.number, "expected 'u v'");
    std::vector<int> ids;
    for (const auto& tok : line.tokens) {
      const int id = parse_number<int>(source, line.number, tok);
      if (id < 0) fail(source, line.number, "negative vertex index");
      ids.push_back(id);
      n = std::max(n, id + 1);
    }
    if (ids.size() == 2) {
      if (ids[0] == ids[1]) fail(source, line.number, "self-loop");
      edges.emplace_back(std::min(ids[0], ids[1]), std::max(ids[0], ids[1]));
    }
  }
  try {
    return Graph(n, std::move(edges));
  } catch (const DomainError& e) {
    throw IoError(std::string(source) + ": " + e.what());
  }
}

Graph read_graph_file(const std::filesystem::path& path) {
  auto in = open_file(path);
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "# " << g.n() << " vertices\n";
  std::vector<bool> touched(static_cast<std::size_t>(g.n()), false);
  for (const auto& [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
    touched[static_cast<std::size_t>(u)] = touched[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (!touched[static_cast<std::size_t>(v)]) out << v << '\n';
  }
}

Matrix read_matrix(std::istream& in, std::string_view source) {
  const auto lines = tokenize(in);
  if (lines.empty()) throw IoError(std::string(source) + ": empty matrix file");
  if (lines[0].tokens.size() != 1) fail(source, lines[0].number, "expected the order n");
  const long n = parse_number<long>(source, lines[0].number, lines[0].tokens[0]);
  if (n <= 0) fail(source, lines[0].number, "order must be positive");
  if (static_cast<long>(lines.size()) - 1 != n) {
    throw IoError(std::string(source) + ": expected " + std::to_string(n) + " rows, found " +
                  std::to_string(lines.size() - 1));
  }
  Matrix a(n, n);
  for (long i = 0; i < n; ++i) {
    const Line& line = lines[static_cast<std::size_t>(i + 1)];
    if (static_cast<long>(line.tokens.size()) != n) {
      fail(source, line.number, "expected " + std::to_string(n) + " entries");
    }
    for (long j = 0; j < n; ++j) {
      a(i, j) = parse_number<double>(source, line.number, line.tokens[static_cast<std::size_t>(j)]);
    }
  }
  return a;
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  auto in = open_file(path);
  return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const Matrix& a) {
  out << a.rows() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ' ';
      out << format_real(a(i, j));
    }
    out << '\n';
  }
}

Vector read_vector(std::istream& in, std::string_view source) {
  std::vector<double> values;
  for (const Line& line : tokenize(in)) {
    for (const auto& tok : line.tokens) values.push_back(parse_number<double>(source, line.number, tok));
  }
  if (values.empty()) throw IoError(std::string(source) + ": empty vector file");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector read_vector_file(const std::filesystem::path& path) {
  auto in = open_file(path);
  return read_vector(in, path.string());
}

InputFormat parse_input_format(std::string_view name) {
  if (name == "graph" || name == "edges") return InputFormat::graph;
  if (name == "matrix") return InputFormat::matrix;
  throw DomainError("unknown input format '" + std::string(name) + "' (graph|matrix)");
}

InputFormat detect_format(const std::filesystem::path& path, std::optional<InputFormat> forced) {
  if (forced) return *forced;
  return path.extension() == ".mat" ? InputFormat::matrix : InputFormat::graph;
}

PSpec PSpec::parse(std::string_view text) {
  PSpec spec;
  if (text == "uniform") {
    spec.choice = PChoice::uniform;
  } else if (text == "stationary") {
    spec.choice = PChoice::stationary;
  } else {
    spec.file = std::string(text);
  }
  return spec;
}

std::string PSpec::describe() const { return choice ? to_string(*choice) : file.string(); }

MeasuredMatrix load_measured_matrix(const std::filesystem::path& path, std::optional<InputFormat> forced,
                                    Representation rep, const PSpec& p) {
  std::optional<Vector> explicit_p;
  if (!p.choice) explicit_p = read_vector_file(p.file);
  if (detect_format(path, forced) == InputFormat::matrix) {
    if (rep != Representation::adjacency) {
      throw DomainError("--rep " + to_string(rep) + " applies to graph inputs only; " + path.string() +
                        " is a matrix");
    }
    if (p.choice == PChoice::stationary) {
      throw DomainError("--p stationary applies to graph inputs only; " + path.string() +
                        " is a matrix");
    }
    Matrix a = read_matrix_file(path);
    if (explicit_p) return MeasuredMatrix(std::move(a), std::move(*explicit_p));
    return MeasuredMatrix::uniform(std::move(a));
  }
  const Graph g = read_graph_file(path);
  if (g.n() == 0) throw IoError(path.string() + ": graph has no vertices");
  if (explicit_p) {
    const MeasuredMatrix base = represent(g, rep, PChoice::uniform);
    return MeasuredMatrix(base.matrix(), std::move(*explicit_p));
  }
  return represent(g, rep, *p.choice);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

}  // namespace measrep
