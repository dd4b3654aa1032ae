#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperpart/hypergraph.hpp"

namespace hyperpart {

// Future volume of a vertex: its own weight plus, for every neighbour j, the
// neighbour's weight scaled by the fraction of j's total pairwise edge weight
// that connects j back to this vertex. Pairwise edge weight between i and j
// sums w(e) over all shared edges. When `only` is given, vertices outside the
// mask are treated as deleted for the pairwise terms (edges touching them
// contribute nothing); returned values for masked-out vertices are just their
// weights.
std::vector<double> future_volumes(const Hypergraph& hg,
                                   const std::vector<std::uint8_t>* only = nullptr);

// Fraction of v's total pairwise algebraic connection that lands in the
// marked set: sum over neighbours j in the set of rho(e_vj) divided by the
// sum over all neighbours, where rho(e_vj) accumulates the per-edge algebraic
// weights of shared edges. Returns 0 for vertices with no neighbours.
double strong_connection_ratio(const Hypergraph& hg, const std::vector<double>& rho,
                               VertexId v, const std::vector<std::uint8_t>& in_set);

struct SeedSplit {
  std::vector<std::uint8_t> is_seed;  // per vertex
  std::vector<VertexId> seeds;        // ascending
  // Working future volumes: the initial values for vertices picked in the
  // outlier stage, the recomputed non-seed-restricted values for the rest.
  std::vector<double> fv;
};

// Seed selection: outliers (fv > mean + 2 * population stddev) become seeds;
// remaining vertices are visited in decreasing recomputed fv (ties: lower id)
// and promoted whenever their strong-connection ratio to the current seed set
// is <= q. Every non-seed ends strongly connected (> q) to the final seeds.
SeedSplit select_seeds(const Hypergraph& hg, const std::vector<double>& rho, double q);

struct Cluster {
  VertexId representative = -1;  // the seed, or the vertex itself for orphan singletons
  std::vector<VertexId> members; // includes the representative, ascending
  double weight = 0.0;
};

struct Aggregation {
  std::vector<std::int32_t> cluster_of;  // per vertex, dense ids
  std::vector<Cluster> clusters;         // ordered by representative id
};

enum class IpmOrder { kRandom, kFutureVolume };
enum class IpmMetric { kInnerProduct, kConnectivity };

// Assigns every non-seed to a seed cluster by argmax of the chosen affinity
// metric, visiting non-seeds in the chosen order:
//   kInnerProduct: sum of rho over edges shared with the seed itself;
//   kConnectivity: (sum of rho over v's edges touching the cluster) divided by
//                  (cluster weight + w(v)).
// Clusters that cannot take the vertex without exceeding max_cluster_weight
// are skipped in the argmax; vertices with no admissible candidate become
// singleton clusters. Ties break to the lower representative id.
Aggregation inner_product_aggregate(const Hypergraph& hg, const std::vector<double>& rho,
                                    const SeedSplit& split, IpmOrder order, IpmMetric metric,
                                    std::uint64_t rng_seed, double max_cluster_weight);

struct MatchingTrace {
  std::vector<std::vector<VertexId>> seed_pref;     // per seed id: non-seeds, best first
  std::vector<std::vector<VertexId>> nonseed_pref;  // per non-seed id: seeds, best first
  std::vector<std::vector<VertexId>> waitlist;      // per seed id: accepted, preference order
  std::int64_t waitlist_cap = 0;
};

// Deferred-acceptance matching between seeds (proposers) and non-seeds.
// Preference on both sides is the summed rho over shared edges, descending,
// ties to the lower vertex id. A seed proposes only while its waitlist holds
// fewer than floor(3 * max_vtx_wgt + 10) entries; a non-seed holds the best
// proposal received so far and rejections free the jilted seed to continue.
// Clusters are then formed from each waitlist in preference order subject to
// max_cluster_weight; dropped or never-matched non-seeds become singletons.
Aggregation stable_matching_aggregate(const Hypergraph& hg, const std::vector<double>& rho,
                                      const SeedSplit& split, double max_vtx_wgt,
                                      double max_cluster_weight,
                                      MatchingTrace* trace = nullptr);

struct CoarseProvenance {
  std::string scheme;
  std::string detail;
};

struct CoarseLevel {
  Hypergraph coarse;
  std::vector<std::int32_t> map;  // fine vertex -> coarse vertex
  CoarseProvenance provenance;
  // Total weight of coarse edges dropped for having a single pin (edge fully
  // inside one cluster). Kept for bookkeeping: conservation checks add it
  // back to the coarse edge-weight total.
  double dropped_singleton_weight = 0.0;
};

// Builds the coarse hypergraph: one vertex per cluster (weights summed),
// fine edges mapped through the clustering with identical coarse pin sets
// merged (weights summed) and single-pin coarse edges dropped.
CoarseLevel contract(const Hypergraph& hg, const Aggregation& agg,
                     CoarseProvenance provenance = {});

}  // namespace hyperpart
