#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperpart/hypergraph.hpp"

namespace hyperpart {

struct AlgdistConfig {
  double omega = 0.5;             // under-relaxation factor in (0, 1]
  std::int32_t test_vectors = 8;  // number of independent coordinate vectors
  std::int32_t iterations = 20;
  std::uint64_t rng_seed = 1;
};

// Coordinates for every star-expansion node (vertices first, then edges),
// one vector per test vector. After each relaxation sweep every active node
// lies in [-1/2, 1/2] with the extremes attained exactly.
struct Embeddings {
  std::int32_t n_vertices = 0;
  std::int32_t n_edges = 0;
  std::int32_t test_vectors = 0;
  std::vector<std::vector<double>> coord;  // [r][node], node in [0, n_vertices + n_edges)
  std::vector<std::uint8_t> active;        // false for isolated nodes (pinned at 0)
  std::int64_t perturbation_events = 0;    // degenerate-range rescues taken

  std::span<const double> vertex_block(std::int32_t r) const {
    return {coord[r].data(), static_cast<std::size_t>(n_vertices)};
  }
  double vertex_coord(std::int32_t r, VertexId v) const { return coord[r][v]; }
  double edge_coord(std::int32_t r, EdgeId e) const { return coord[r][n_vertices + e]; }
};

// Star-expansion smoothing operator. One application computes, for every
// active node, the weighted average of its bipartite neighbours:
//   vertex v pulls from incident edges with link weight w(e)/|e|,
//   edge e pulls from its pins with link weight w(v),
// each row normalised by the sum of its own link weights (so the linear part
// is row-stochastic), then blended with the previous value:
//   x' = omega * avg + (1 - omega) * x.
// Nodes with no links (isolated vertices) are inactive and stay at 0.
struct RelaxOperator {
  const Hypergraph* hg = nullptr;
  std::vector<double> edge_coef;       // w(e)/|e| per edge
  std::vector<double> inv_degree;      // per node, 0 for inactive
  std::vector<std::uint8_t> active;    // per node
  std::int32_t n_nodes = 0;

  void apply(double omega, const std::vector<double>& in, std::vector<double>& out) const;
};

RelaxOperator build_operator(const Hypergraph& hg);

// Called after every completed iteration of one test vector with the full
// node-coordinate vector (post-rescale).
using RelaxObserver =
    std::function<void(std::int32_t vector_idx, std::int32_t iteration,
                       const std::vector<double>& coords)>;

// Runs `iterations` sweeps per test vector. Initial coordinates are uniform
// in [0,1) drawn per (seed, vector, node) unless `initial` supplies them
// (one vector of length n_vertices + n_edges per test vector). After each
// sweep coordinates are affinely mapped onto [-1/2, 1/2]; if the sweep output
// is constant (no range), the rescale is skipped and the vector is nudged by
// seeded noise of magnitude 1e-9 around the centre instead.
Embeddings relax(const Hypergraph& hg, const AlgdistConfig& cfg,
                 const std::vector<std::vector<double>>* initial = nullptr,
                 const RelaxObserver* observer = nullptr);

// max over test vectors of |x_i - x_j|, vertex block.
double algdist(const Embeddings& emb, VertexId i, VertexId j);

// Per-edge diameter: max over test vectors of the coordinate range of the
// edge's pins (for 1-D coordinates the range equals the max pairwise
// distance). Singleton edges have diameter 0.
std::vector<double> edge_diameters(const Embeddings& emb, const Hypergraph& hg);

struct EdgeWeightParams {
  double distance_floor = 1e-12;  // diameters below this are clamped up
  double weight_cap = 1e12;       // resulting weights are capped here
};

// Algebraic edge weight rho(e) = 1 / max(diameter(e), floor), capped.
// Edges whose pins were all excluded from relaxation (cannot happen for a
// structurally valid hypergraph, kept as a defensive path) fall back to the
// raw edge weight.
std::vector<double> edge_algebraic_weights(const Embeddings& emb, const Hypergraph& hg,
                                           const EdgeWeightParams& params = {});

}  // namespace hyperpart
