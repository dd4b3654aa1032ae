#include "hyperpart/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hyperpart {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

Hypergraph load_rownet_mtx(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::string line;
  int lineno = 0;

  if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
  ++lineno;
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket")
    throw ParseError(path, lineno, "missing %%MatrixMarket banner");
  if (lower(object) != "matrix")
    throw ParseError(path, lineno, "unsupported object '" + object + "'");
  if (lower(format) != "coordinate")
    throw ParseError(path, lineno, "only coordinate format is supported");
  field = lower(field);
  symmetry = lower(symmetry);
  if (field != "real" && field != "integer" && field != "pattern" && field != "complex")
    throw ParseError(path, lineno, "unknown field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric" &&
      symmetry != "hermitian")
    throw ParseError(path, lineno, "unknown symmetry '" + symmetry + "'");
  const bool mirrored = symmetry != "general";

  // Size line: first non-comment, non-blank line after the banner.
  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz))
      throw ParseError(path, lineno, "malformed size line (expected: rows cols nnz)");
    break;
  }
  if (rows < 0) throw ParseError(path, lineno, "missing size line");
  if (rows == 0 || cols == 0) throw ParseError(path, lineno, "zero-dimension matrix");
  if (mirrored && rows != cols)
    throw ParseError(path, lineno, "symmetric storage requires a square matrix");
  if (nnz == 0) throw ParseError(path, lineno, "matrix declares zero entries (zero pins)");

  std::vector<std::set<VertexId>> row_pins(static_cast<std::size_t>(rows));
  long long seen = 0;
  while (seen < nnz && std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ss(line);
    long long i = 0, j = 0;
    if (!(ss >> i >> j))
      throw ParseError(path, lineno, "malformed entry (expected: row col [value])");
    if (i < 1 || i > rows)
      throw ParseError(path, lineno, "row index " + std::to_string(i) + " outside [1," +
                                         std::to_string(rows) + "]");
    if (j < 1 || j > cols)
      throw ParseError(path, lineno, "column index " + std::to_string(j) + " outside [1," +
                                         std::to_string(cols) + "]");
    row_pins[static_cast<std::size_t>(i - 1)].insert(static_cast<VertexId>(j - 1));
    if (mirrored && i != j)
      row_pins[static_cast<std::size_t>(j - 1)].insert(static_cast<VertexId>(i - 1));
    ++seen;
  }
  if (seen < nnz)
    throw ParseError(path, lineno,
                     "file ends after " + std::to_string(seen) + " of " +
                         std::to_string(nnz) + " declared entries");
  while (std::getline(in, line)) {
    ++lineno;
    if (!blank(line) && line[0] != '%')
      throw ParseError(path, lineno, "unexpected data after declared entries");
  }

  std::vector<std::vector<VertexId>> pin_lists;
  pin_lists.reserve(row_pins.size());
  for (const auto& r : row_pins) {
    if (r.empty()) continue;  // empty rows dropped, ids renumbered densely
    pin_lists.emplace_back(r.begin(), r.end());
  }
  return make_hypergraph(static_cast<std::int32_t>(cols), std::move(pin_lists));
}

void save_rownet_mtx(const Hypergraph& hg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << hg.n_edges() << " " << hg.n_vertices() << " " << hg.n_pins() << "\n";
  for (EdgeId ei = 0; ei < hg.n_edges(); ++ei)
    for (VertexId v : hg.pins[ei]) out << (ei + 1) << " " << (v + 1) << "\n";
  if (!out) throw ParseError(path, 0, "write failed");
}

Hypergraph load_native(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    std::istringstream ss(line);
    if (!(ss >> n >> m))
      throw ParseError(path, lineno, "malformed header (expected: n_vertices n_edges)");
    std::string extra;
    if (ss >> extra) throw ParseError(path, lineno, "trailing tokens on header line");
    break;
  }
  if (n < 0) throw ParseError(path, lineno, "missing header line");
  if (n == 0) throw ParseError(path, lineno, "hypergraph must have at least one vertex");

  std::vector<std::vector<VertexId>> pin_lists;
  std::vector<double> edge_weights;
  long long read_edges = 0;
  std::vector<double> vertex_weights;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '#') continue;
    std::istringstream ss(line);
    if (read_edges < m) {
      double w = 0.0;
      if (!(ss >> w)) throw ParseError(path, lineno, "malformed edge line (expected: weight pins...)");
      std::vector<VertexId> pins;
      long long v = 0;
      while (ss >> v) {
        if (v < 0 || v >= n)
          throw ParseError(path, lineno, "pin " + std::to_string(v) + " outside [0," +
                                             std::to_string(n - 1) + "]");
        pins.push_back(static_cast<VertexId>(v));
      }
      if (!ss.eof()) throw ParseError(path, lineno, "non-numeric pin on edge line");
      if (pins.empty()) throw ParseError(path, lineno, "edge with no pins");
      edge_weights.push_back(w);
      pin_lists.push_back(std::move(pins));
      ++read_edges;
    } else if (vertex_weights.empty()) {
      double w = 0.0;
      while (ss >> w) vertex_weights.push_back(w);
      if (!ss.eof() || vertex_weights.size() != static_cast<std::size_t>(n))
        throw ParseError(path, lineno, "vertex weight line must hold exactly " +
                                           std::to_string(n) + " numbers");
    } else {
      throw ParseError(path, lineno, "unexpected data after vertex weights");
    }
  }
  if (read_edges < m)
    throw ParseError(path, lineno, "file ends after " + std::to_string(read_edges) + " of " +
                                       std::to_string(m) + " declared edges");
  return make_hypergraph(static_cast<std::int32_t>(n), std::move(pin_lists),
                         std::move(edge_weights), std::move(vertex_weights));
}

void save_native(const Hypergraph& hg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  out << hg.n_vertices() << " " << hg.n_edges() << "\n";
  out.precision(17);
  for (EdgeId ei = 0; ei < hg.n_edges(); ++ei) {
    out << hg.edge_weight[ei];
    for (VertexId v : hg.pins[ei]) out << " " << v;
    out << "\n";
  }
  bool unit = std::all_of(hg.vertex_weight.begin(), hg.vertex_weight.end(),
                          [](double w) { return w == 1.0; });
  if (!unit) {
    for (VertexId v = 0; v < hg.n_vertices(); ++v)
      out << hg.vertex_weight[v] << (v + 1 == hg.n_vertices() ? "\n" : " ");
  }
  if (!out) throw ParseError(path, 0, "write failed");
}

Hypergraph load_auto(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::string first;
  std::getline(in, first);
  in.close();
  if (lower(first).rfind("%%matrixmarket", 0) == 0) return load_rownet_mtx(path);
  return load_native(path);
}

}  // namespace hyperpart
