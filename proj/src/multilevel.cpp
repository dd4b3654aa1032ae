#include "hyperpart/multilevel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hyperpart/rng.hpp"

namespace hyperpart {

std::int32_t effective_coarsest_size(const MultilevelConfig& cfg) {
  std::int32_t size = cfg.coarsest_size > 0
                          ? cfg.coarsest_size
                          : std::max<std::int32_t>(100, 20 * std::max<PartId>(cfg.k, 1));
  return std::max<std::int32_t>(size, std::max<PartId>(cfg.k, 2));
}

namespace {

Aggregation aggregate_once(const Hypergraph& hg, const MultilevelConfig& cfg,
                           const std::vector<double>& rho, const SeedSplit& split,
                           std::uint64_t level_seed) {
  const double bound = hg.total_vertex_weight() / static_cast<double>(std::max<PartId>(cfg.k, 2));
  if (cfg.scheme == AggregationScheme::kInnerProduct) {
    return inner_product_aggregate(hg, rho, split, cfg.ipm_order, cfg.ipm_metric,
                                   mix_seed(level_seed, 2), bound);
  }
  const double max_w =
      *std::max_element(hg.vertex_weight.begin(), hg.vertex_weight.end());
  return stable_matching_aggregate(hg, rho, split, max_w, bound);
}

}  // namespace

Hierarchy build_hierarchy(const Hypergraph& hg, const MultilevelConfig& cfg) {
  const std::int32_t floor_size = effective_coarsest_size(cfg);
  Hierarchy h;
  h.sizes.push_back(hg.n_vertices());

  const Hypergraph* cur = &hg;
  std::int32_t level = 0;
  while (cur->n_vertices() > floor_size) {
    const std::uint64_t level_seed = mix_seed(cfg.rng_seed, 1000 + static_cast<std::uint64_t>(level));
    AlgdistConfig ac = cfg.algdist;
    ac.rng_seed = mix_seed(level_seed, 1);
    const Embeddings emb = relax(*cur, ac);
    const std::vector<double> rho = edge_algebraic_weights(emb, *cur);
    const SeedSplit split = select_seeds(*cur, rho, cfg.q_threshold);
    const Aggregation agg = aggregate_once(*cur, cfg, rho, split, level_seed);

    CoarseLevel lvl = contract(*cur, agg,
                               {scheme_name(cfg.scheme), "level " + std::to_string(level)});
    const std::int32_t fine_n = cur->n_vertices();
    const std::int32_t coarse_n = lvl.coarse.n_vertices();
    if (coarse_n >= fine_n) break;  // no shrink at all: discard the level and stop

    h.levels.push_back(std::move(lvl));
    h.sizes.push_back(coarse_n);
    cur = &h.levels.back().coarse;
    ++level;
    if (static_cast<double>(coarse_n) > cfg.min_reduction * static_cast<double>(fine_n))
      break;  // stagnation: keep the level but stop descending
  }
  return h;
}

namespace {

// One full V-cycle bisection with a part-0 weight fraction target. node_salt
// distinguishes recursion nodes so every bisection draws independent randomness.
Partition bisect_cycle(const Hypergraph& hg, const MultilevelConfig& cfg, double frac0,
                       double local_tol, std::uint64_t node_salt,
                       std::vector<std::int32_t>* sizes_out) {
  MultilevelConfig local = cfg;
  local.k = 2;
  local.rng_seed = mix_seed(cfg.rng_seed, node_salt);
  // coarsest_size: inherit the caller's request (0 resolves against k = 2).
  const Hierarchy h = build_hierarchy(hg, local);
  if (sizes_out) *sizes_out = h.sizes;

  RefineConfig rc;
  rc.tolerance = local_tol;
  rc.max_passes = cfg.max_passes;
  rc.rng_seed = mix_seed(local.rng_seed, 7);

  const Hypergraph& coarsest = h.levels.empty() ? hg : h.levels.back().coarse;
  Partition p = initial_bisect_targets(coarsest, rc, frac0);
  for (std::size_t i = h.levels.size(); i-- > 0;) {
    const Hypergraph& fine = i == 0 ? hg : h.levels[i - 1].coarse;
    p = project(p, h.levels[i].map, fine.n_vertices());
    p = fm_refine_targets(fine, std::move(p), rc, frac0);
  }
  return p;
}

struct SubInstance {
  Hypergraph hg;
  std::vector<VertexId> to_parent;  // sub vertex -> parent vertex
};

SubInstance induce(const Hypergraph& hg, const Partition& p, PartId side) {
  SubInstance sub;
  std::vector<std::int32_t> to_sub(static_cast<std::size_t>(hg.n_vertices()), -1);
  std::vector<double> vw;
  for (VertexId v = 0; v < hg.n_vertices(); ++v) {
    if (p.part[v] != side) continue;
    to_sub[v] = static_cast<std::int32_t>(sub.to_parent.size());
    sub.to_parent.push_back(v);
    vw.push_back(hg.vertex_weight[v]);
  }
  std::vector<std::vector<VertexId>> pins;
  std::vector<double> ew;
  for (EdgeId e = 0; e < hg.n_edges(); ++e) {
    std::vector<VertexId> kept;
    for (VertexId v : hg.pins[e])
      if (to_sub[v] >= 0) kept.push_back(to_sub[v]);
    if (kept.size() < 2) continue;  // remnants with one pin cannot be cut again
    pins.push_back(std::move(kept));
    ew.push_back(hg.edge_weight[e]);
  }
  sub.hg = make_hypergraph(static_cast<std::int32_t>(sub.to_parent.size()), std::move(pins),
                           std::move(ew), std::move(vw));
  return sub;
}

// part_cap is the global strict upper bound on any final part's weight
// (tolerance * total / k). A side that will carry kL parts may weigh at most
// kL * cap; for instances whose vertex weights are all integral, cap rounds
// down to the largest integer a part can actually reach, which tightens the
// window enough that an upper split never strands a side no integer
// partition can satisfy (e.g. 33 vertices for 4 parts of at most 8).
void kway_recurse(const Hypergraph& hg, const MultilevelConfig& cfg, PartId k, double part_cap,
                  bool integral, std::uint64_t node_salt, PartId first_part,
                  std::vector<PartId>& out, const std::vector<VertexId>& to_root,
                  std::vector<std::int32_t>* top_sizes) {
  if (k == 1) {
    for (VertexId v = 0; v < hg.n_vertices(); ++v) out[to_root[v]] = first_part;
    return;
  }
  if (hg.n_vertices() <= k) {
    // A branch can run out of vertices (lopsided split above); spread what is
    // left one vertex per part and leave the remaining parts empty.
    for (VertexId v = 0; v < hg.n_vertices(); ++v) out[to_root[v]] = first_part + v;
    return;
  }
  const PartId k_left = (k + 1) / 2;
  const PartId k_right = k / 2;
  const double total = hg.total_vertex_weight();
  const double cap = integral ? std::floor(part_cap - 1e-9) : part_cap;
  // With targets t0 = (kL/k) * total, "side0 <= kL * cap" and the mirrored
  // side1 bound both reduce to ratio < k * cap / total; integral instances
  // get half of the smallest ratio step so the <= bound survives the strict
  // comparison.
  double local_tol = static_cast<double>(k) * cap / total;
  if (integral)
    local_tol += 0.5 * static_cast<double>(k) /
                 (static_cast<double>(std::max(k_left, k_right)) * total);
  local_tol = std::max(local_tol, 1.0 + 1e-12);
  const double frac0 = static_cast<double>(k_left) / static_cast<double>(k);

  Partition p = bisect_cycle(hg, cfg, frac0, local_tol, node_salt, top_sizes);

  for (PartId side = 0; side < 2; ++side) {
    const PartId sub_k = side == 0 ? k_left : k_right;
    const PartId sub_first = side == 0 ? first_part : first_part + k_left;
    SubInstance sub = induce(hg, p, side);
    std::vector<VertexId> sub_to_root(sub.to_parent.size());
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
      sub_to_root[i] = to_root[sub.to_parent[i]];
    kway_recurse(sub.hg, cfg, sub_k, part_cap, integral, node_salt * 2 + 1 + side, sub_first,
                 out, sub_to_root, nullptr);
  }
}

}  // namespace

PartitionResult bisect(const Hypergraph& hg, const MultilevelConfig& cfg) {
  MultilevelConfig c2 = cfg;
  c2.k = 2;
  return kway(hg, c2);
}

PartitionResult kway(const Hypergraph& hg, const MultilevelConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("kway: k must be >= 1");
  if (cfg.k > hg.n_vertices())
    throw std::invalid_argument("kway: more parts than vertices (k = " + std::to_string(cfg.k) +
                                ", |V| = " + std::to_string(hg.n_vertices()) + ")");
  if (!(cfg.tolerance > 1.0)) throw std::invalid_argument("kway: tolerance must exceed 1");

  const auto t_start = std::chrono::steady_clock::now();
  PartitionResult res;
  res.partition.k = cfg.k;
  res.partition.part.assign(static_cast<std::size_t>(hg.n_vertices()), 0);

  if (cfg.k > 1) {
    std::vector<VertexId> identity(static_cast<std::size_t>(hg.n_vertices()));
    for (VertexId v = 0; v < hg.n_vertices(); ++v) identity[v] = v;
    const double part_cap = cfg.tolerance * hg.total_vertex_weight() / cfg.k;
    const bool integral =
        std::all_of(hg.vertex_weight.begin(), hg.vertex_weight.end(),
                    [](double w) { return std::floor(w) == w; });
    kway_recurse(hg, cfg, cfg.k, part_cap, integral, /*node_salt=*/1, /*first_part=*/0,
                 res.partition.part, identity, &res.level_sizes);
  } else {
    res.level_sizes = {hg.n_vertices()};
  }

  res.report = cut_report(hg, res.partition);
  res.feasible = res.report.imbalance < cfg.tolerance;
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          t_start)
                    .count();
  return res;
}

std::string scheme_name(AggregationScheme s) {
  return s == AggregationScheme::kInnerProduct ? "ipm" : "stable";
}
std::string order_name(IpmOrder o) {
  return o == IpmOrder::kRandom ? "random" : "fv";
}
std::string metric_name(IpmMetric m) {
  return m == IpmMetric::kInnerProduct ? "ip" : "conn";
}

}  // namespace hyperpart
