#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperpart/algdist.hpp"
#include "hyperpart/coarsening.hpp"
#include "hyperpart/hypergraph.hpp"
#include "hyperpart/refine.hpp"

namespace hyperpart {

enum class AggregationScheme { kInnerProduct, kStableMatching };

struct MultilevelConfig {
  PartId k = 2;
  double tolerance = 1.05;  // final partition must satisfy imbalance < tolerance
  AggregationScheme scheme = AggregationScheme::kInnerProduct;
  IpmOrder ipm_order = IpmOrder::kRandom;
  IpmMetric ipm_metric = IpmMetric::kInnerProduct;
  double q_threshold = 0.5;  // strong-connection threshold for seed selection
  AlgdistConfig algdist;     // rng_seed is re-derived per level from rng_seed below
  std::int32_t coarsest_size = 0;  // 0 means the default max(100, 20 * k)
  double min_reduction = 0.9;      // stop coarsening when coarse/fine exceeds this
  std::int32_t max_passes = 4;     // FM budget per refinement call
  std::uint64_t rng_seed = 1;
};

std::int32_t effective_coarsest_size(const MultilevelConfig& cfg);

struct Hierarchy {
  std::vector<CoarseLevel> levels;  // levels[0] coarsens the input, back() is coarsest
  // Vertex counts from the input hypergraph down to the coarsest level.
  std::vector<std::int32_t> sizes;
};

// Repeats relax -> algebraic edge weights -> seed selection -> aggregation ->
// contract until the vertex count reaches the coarsest-size floor, shrinkage
// stagnates (coarse/fine > min_reduction after one more level), or a level
// stops shrinking entirely (that level is discarded). Level sizes strictly
// decrease and total vertex weight is conserved level to level.
Hierarchy build_hierarchy(const Hypergraph& hg, const MultilevelConfig& cfg);

struct PartitionResult {
  Partition partition;
  CutReport report;
  bool feasible = false;              // report.imbalance < tolerance
  std::vector<std::int32_t> level_sizes;  // hierarchy of the top-level bisection
  double wall_ms = 0.0;
};

// Multilevel bisection: build hierarchy, greedy+FM initial partition at the
// coarsest level, then project and FM-refine back to the finest level.
PartitionResult bisect(const Hypergraph& hg, const MultilevelConfig& cfg);

// Recursive bisection into k parts (ceil/floor split of part counts, weight
// targets proportional). Every recursion node derives its own balance window
// from the global per-part weight cap — a side carrying kL of the parts may
// weigh at most kL times the cap — so the composed partition meets the
// global tolerance; integral vertex weights tighten the cap to the largest
// weight a part can actually reach. k = 1 returns everything in part 0;
// k > |V| is an error. The returned report is recomputed directly from the
// final assignment.
PartitionResult kway(const Hypergraph& hg, const MultilevelConfig& cfg);

// Human-readable names used in CSV/JSON output and CLI flags.
std::string scheme_name(AggregationScheme s);
std::string order_name(IpmOrder o);
std::string metric_name(IpmMetric m);

}  // namespace hyperpart
