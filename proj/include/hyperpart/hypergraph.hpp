#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperpart {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using PartId = std::int32_t;

// Vertex- and edge-weighted hypergraph stored as pin lists per edge plus the
// derived inverse incidence (edges per vertex). Fields are public: loaders and
// tests may assemble arbitrary (even invalid) states; validate() reports the
// violations instead of constructors throwing.
struct Hypergraph {
  std::vector<double> vertex_weight;
  std::vector<double> edge_weight;
  std::vector<std::vector<VertexId>> pins;      // per edge, sorted + unique once finalized
  std::vector<std::vector<EdgeId>> incident;    // per vertex, sorted (derived)

  std::int32_t n_vertices() const { return static_cast<std::int32_t>(vertex_weight.size()); }
  std::int32_t n_edges() const { return static_cast<std::int32_t>(edge_weight.size()); }
  std::int64_t n_pins() const;
  double total_vertex_weight() const;

  // Sorts and dedups every pin list, then rebuilds the inverse incidence.
  // Out-of-range pins are left in place (validate flags them) but skipped when
  // building the inverse map so the structure stays addressable.
  void finalize();
};

// Normalizing constructor used by loaders and tests: unit weights by default.
Hypergraph make_hypergraph(std::int32_t n_vertices,
                           std::vector<std::vector<VertexId>> pin_lists,
                           std::vector<double> edge_weights = {},
                           std::vector<double> vertex_weights = {});

struct Partition {
  std::vector<PartId> part;  // one entry per vertex
  PartId k = 0;
};

struct CutReport {
  double cut_weight = 0.0;
  double imbalance = 0.0;
  std::vector<double> part_weights;
};

// Total weight of edges spanning at least two parts. Throws std::invalid_argument
// on size mismatch or part ids outside [0, k).
double cut_weight(const Hypergraph& hg, const Partition& p);

// max_i part_weight(i) / (total_weight / k). Throws on k < 1 or invalid ids.
double imbalance(const Hypergraph& hg, const Partition& p);

CutReport cut_report(const Hypergraph& hg, const Partition& p);

// Bipartite graph with one left node per vertex and one right node per edge,
// linked wherever the vertex is a pin of the edge.
struct StarExpansion {
  std::int32_t n_vertices = 0;
  std::int32_t n_edges = 0;
  std::vector<std::vector<EdgeId>> vertex_links;  // per vertex: edge ids
  std::vector<std::vector<VertexId>> edge_links;  // per edge: vertex ids
  std::int64_t n_links() const;
};

StarExpansion star_expansion(const Hypergraph& hg);

struct Finding {
  std::string code;     // stable machine-readable tag, e.g. "empty-edge"
  std::string message;  // human-readable detail with offending ids
};

// Structural checks: nonempty edges, pins in range and duplicate-free,
// positive weights, inverse incidence consistent with the pin lists.
// Returns one finding per violation; empty means structurally valid.
std::vector<Finding> validate(const Hypergraph& hg);

}  // namespace hyperpart
