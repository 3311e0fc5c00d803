#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "measrep/matrix.hpp"

namespace measrep {

/// Edge list: one `u v` pair per line, 0-indexed, `#` starts a comment. A
/// line holding a single index declares that vertex without edges. The
/// vertex count is one more than the largest index seen. Malformed lines
/// throw IoError naming `source` and the line number.
Graph read_graph(std::istream& in, std::string_view source = "<input>");
Graph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);

/// First line `n`, then n rows of n decimals. `#` comments allowed.
Matrix read_matrix(std::istream& in, std::string_view source = "<input>");
Matrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const Matrix& a);

/// n whitespace-separated decimals.
Vector read_vector(std::istream& in, std::string_view source = "<input>");
Vector read_vector_file(const std::filesystem::path& path);

enum class InputFormat { graph, matrix };

InputFormat parse_input_format(std::string_view name);
/// `.mat` files are matrices, everything else an edge list, unless
/// `forced` says otherwise.
InputFormat detect_format(const std::filesystem::path& path,
                          std::optional<InputFormat> forced = std::nullopt);

/// How the probability vector is chosen: `uniform`, `stationary` or a path.
struct PSpec {
  std::optional<PChoice> choice;
  std::filesystem::path file;

  static PSpec parse(std::string_view text);
  std::string describe() const;
};

/// A file loaded as a measured matrix, with the flags applied.
/// Representation and stationary p only make sense for graph inputs.
MeasuredMatrix load_measured_matrix(const std::filesystem::path& path, std::optional<InputFormat> forced,
                                    Representation rep, const PSpec& p);

/// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& fields);

}  // namespace measrep
