#pragma once

#include <stdexcept>
#include <string>

#include "hyperpart/hypergraph.hpp"

namespace hyperpart {

// Parse failure with file position; what() is formatted "path:line: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int line, const std::string& message)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
        path_(path),
        line_(line) {}
  const std::string& path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// Row-net ingestion of a Matrix Market coordinate file: every column becomes a
// vertex, every row an edge, and each stored nonzero a pin. Values are ignored
// (pattern semantics); symmetric/skew/hermitian storage contributes both (i,j)
// and (j,i); duplicate coordinates collapse; rows without pins are dropped and
// edge ids renumbered densely. All weights are 1. Throws ParseError on
// malformed input, zero-dimension matrices, and files with zero pins.
Hypergraph load_rownet_mtx(const std::string& path);

// Writes the pin structure back as a coordinate pattern general matrix
// (rows = edges, cols = vertices). Weights are not representable in pattern
// form, so this is a faithful round-trip only for unit-weight hypergraphs.
void save_rownet_mtx(const Hypergraph& hg, const std::string& path);

// Plain-text hypergraph format:
//   line 1:            n_vertices n_edges
//   next n_edges lines: weight v0 v1 ...        (0-based vertex ids)
//   optional last line: n_vertices vertex weights
Hypergraph load_native(const std::string& path);
void save_native(const Hypergraph& hg, const std::string& path);

// Dispatch on content: files opening with a MatrixMarket banner go through
// load_rownet_mtx, anything else through load_native.
Hypergraph load_auto(const std::string& path);

}  // namespace hyperpart
