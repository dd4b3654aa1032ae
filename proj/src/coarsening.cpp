#include "hyperpart/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

#include "hyperpart/rng.hpp"

namespace hyperpart {

std::vector<double> future_volumes(const Hypergraph& hg,
                                   const std::vector<std::uint8_t>* only) {
  const std::int32_t n = hg.n_vertices();
  auto in = [&](VertexId v) { return only == nullptr || (*only)[v] != 0; };

  // T(j): total pairwise edge weight from j to its (unmasked) neighbours.
  // Every edge e containing j contributes w(e) once per other retained pin,
  // which is exactly the sum over neighbours k of the shared-edge weights.
  std::vector<double> share(static_cast<std::size_t>(n), 0.0);  // w(j)/T(j)
  for (VertexId j = 0; j < n; ++j) {
    if (!in(j)) continue;
    double t = 0.0;
    for (EdgeId e : hg.incident[j]) {
      std::int64_t others = 0;
      for (VertexId u : hg.pins[e])
        if (u != j && in(u)) ++others;
      t += hg.edge_weight[e] * static_cast<double>(others);
    }
    share[j] = t > 0.0 ? hg.vertex_weight[j] / t : 0.0;
  }

  // fv(i) = w(i) + sum over edges e of w(e) * sum of share(j) over the other
  // retained pins j of e — the pairwise double sum regrouped by edge.
  std::vector<double> edge_share(static_cast<std::size_t>(hg.n_edges()), 0.0);
  for (EdgeId e = 0; e < hg.n_edges(); ++e) {
    double s = 0.0;
    for (VertexId u : hg.pins[e])
      if (in(u)) s += share[u];
    edge_share[e] = s;
  }

  std::vector<double> fv(static_cast<std::size_t>(n), 0.0);
  for (VertexId i = 0; i < n; ++i) {
    fv[i] = hg.vertex_weight[i];
    if (!in(i)) continue;
    for (EdgeId e : hg.incident[i])
      fv[i] += hg.edge_weight[e] * (edge_share[e] - share[i]);
  }
  return fv;
}

double strong_connection_ratio(const Hypergraph& hg, const std::vector<double>& rho,
                               VertexId v, const std::vector<std::uint8_t>& in_set) {
  double num = 0.0, den = 0.0;
  for (EdgeId e : hg.incident[v]) {
    std::int64_t others = 0, marked = 0;
    for (VertexId u : hg.pins[e]) {
      if (u == v) continue;
      ++others;
      if (in_set[u]) ++marked;
    }
    num += rho[e] * static_cast<double>(marked);
    den += rho[e] * static_cast<double>(others);
  }
  return den > 0.0 ? num / den : 0.0;
}

SeedSplit select_seeds(const Hypergraph& hg, const std::vector<double>& rho, double q) {
  const std::int32_t n = hg.n_vertices();
  if (rho.size() != static_cast<std::size_t>(hg.n_edges()))
    throw std::invalid_argument("select_seeds: rho size does not match edge count");

  SeedSplit out;
  out.is_seed.assign(static_cast<std::size_t>(n), 0);
  out.fv = future_volumes(hg);

  double mean = 0.0;
  for (double f : out.fv) mean += f;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double f : out.fv) var += (f - mean) * (f - mean);
  const double sigma = std::sqrt(var / static_cast<double>(n));

  std::vector<std::uint8_t> in_f(static_cast<std::size_t>(n), 1);
  for (VertexId v = 0; v < n; ++v) {
    if (out.fv[v] > mean + 2.0 * sigma) {
      out.is_seed[v] = 1;
      in_f[v] = 0;
    }
  }

  // Re-evaluate future volumes as if seed vertices were deleted, then sweep
  // the rest from most to least promising. The visit order is frozen before
  // the sweep; membership tests always see the current seed set.
  const std::vector<double> fvr = future_volumes(hg, &in_f);
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v) {
    if (!out.is_seed[v]) {
      out.fv[v] = fvr[v];
      order.push_back(v);
    }
  }
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (out.fv[a] != out.fv[b]) return out.fv[a] > out.fv[b];
    return a < b;
  });
  for (VertexId v : order) {
    if (strong_connection_ratio(hg, rho, v, out.is_seed) <= q) out.is_seed[v] = 1;
  }

  for (VertexId v = 0; v < n; ++v)
    if (out.is_seed[v]) out.seeds.push_back(v);
  return out;
}

namespace {

// Shared tail of both aggregation schemes: canonical cluster order (ascending
// representative id) and dense ids.
Aggregation canonicalize(std::int32_t n, std::vector<Cluster> clusters) {
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.representative < b.representative; });
  Aggregation agg;
  agg.cluster_of.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::sort(clusters[c].members.begin(), clusters[c].members.end());
    for (VertexId v : clusters[c].members) agg.cluster_of[v] = static_cast<std::int32_t>(c);
  }
  agg.clusters = std::move(clusters);
  return agg;
}

// Summed rho over edges shared by v and each seed adjacent to it.
std::vector<std::pair<VertexId, double>> seed_affinities(const Hypergraph& hg,
                                                         const std::vector<double>& rho,
                                                         const SeedSplit& split, VertexId v) {
  std::map<VertexId, double> acc;
  for (EdgeId e : hg.incident[v]) {
    for (VertexId u : hg.pins[e]) {
      if (u != v && split.is_seed[u]) acc[u] += rho[e];
    }
  }
  return {acc.begin(), acc.end()};
}

}  // namespace

Aggregation inner_product_aggregate(const Hypergraph& hg, const std::vector<double>& rho,
                                    const SeedSplit& split, IpmOrder order, IpmMetric metric,
                                    std::uint64_t rng_seed, double max_cluster_weight) {
  const std::int32_t n = hg.n_vertices();
  if (rho.size() != static_cast<std::size_t>(hg.n_edges()))
    throw std::invalid_argument("inner_product_aggregate: rho size mismatch");

  std::vector<Cluster> clusters;
  std::vector<std::int32_t> cluster_of(static_cast<std::size_t>(n), -1);
  for (VertexId s : split.seeds) {
    cluster_of[s] = static_cast<std::int32_t>(clusters.size());
    clusters.push_back({s, {s}, hg.vertex_weight[s]});
  }

  std::vector<VertexId> visit;
  for (VertexId v = 0; v < n; ++v)
    if (!split.is_seed[v]) visit.push_back(v);
  if (order == IpmOrder::kRandom) {
    Rng rng(mix_seed(rng_seed, 0x1b));
    rng.shuffle(visit);
  } else {
    std::sort(visit.begin(), visit.end(), [&](VertexId a, VertexId b) {
      if (split.fv[a] != split.fv[b]) return split.fv[a] > split.fv[b];
      return a < b;
    });
  }

  for (VertexId v : visit) {
    std::int32_t best = -1;
    double best_score = 0.0;
    if (metric == IpmMetric::kInnerProduct) {
      for (const auto& [seed, score] : seed_affinities(hg, rho, split, v)) {
        const std::int32_t c = cluster_of[seed];
        if (clusters[c].weight + hg.vertex_weight[v] > max_cluster_weight) continue;
        if (best < 0 || score > best_score || (score == best_score && c < best)) {
          best = c;
          best_score = score;
        }
      }
    } else {
      // Connectivity: accumulate rho once per edge into every cluster the
      // edge currently touches, then normalise by the would-be cluster weight.
      std::map<std::int32_t, double> touch;
      std::vector<std::int32_t> in_edge;
      for (EdgeId e : hg.incident[v]) {
        in_edge.clear();
        for (VertexId u : hg.pins[e]) {
          if (u == v) continue;
          const std::int32_t c = cluster_of[u];
          if (c >= 0) in_edge.push_back(c);
        }
        std::sort(in_edge.begin(), in_edge.end());
        in_edge.erase(std::unique(in_edge.begin(), in_edge.end()), in_edge.end());
        for (std::int32_t c : in_edge) touch[c] += rho[e];
      }
      for (const auto& [c, connect] : touch) {
        if (clusters[c].weight + hg.vertex_weight[v] > max_cluster_weight) continue;
        const double score = connect / (clusters[c].weight + hg.vertex_weight[v]);
        if (best < 0 || score > best_score || (score == best_score && c < best)) {
          best = c;
          best_score = score;
        }
      }
    }
    if (best >= 0) {
      cluster_of[v] = best;
      clusters[best].members.push_back(v);
      clusters[best].weight += hg.vertex_weight[v];
    } else {
      cluster_of[v] = static_cast<std::int32_t>(clusters.size());
      clusters.push_back({v, {v}, hg.vertex_weight[v]});
    }
  }
  return canonicalize(n, std::move(clusters));
}

Aggregation stable_matching_aggregate(const Hypergraph& hg, const std::vector<double>& rho,
                                      const SeedSplit& split, double max_vtx_wgt,
                                      double max_cluster_weight, MatchingTrace* trace) {
  const std::int32_t n = hg.n_vertices();
  if (rho.size() != static_cast<std::size_t>(hg.n_edges()))
    throw std::invalid_argument("stable_matching_aggregate: rho size mismatch");
  const std::int64_t cap =
      std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(3.0 * max_vtx_wgt + 10.0)));

  // Preference lists on both sides: summed rho over shared edges, descending,
  // ties to the lower vertex id. Only positively-connected pairs appear.
  std::vector<std::vector<VertexId>> seed_pref(static_cast<std::size_t>(n));
  std::vector<std::vector<VertexId>> nonseed_pref(static_cast<std::size_t>(n));
  std::vector<std::map<VertexId, double>> pair_weight(static_cast<std::size_t>(n));
  for (VertexId f = 0; f < n; ++f) {
    if (split.is_seed[f]) continue;
    for (const auto& [s, w] : seed_affinities(hg, rho, split, f)) {
      pair_weight[f][s] = w;
      pair_weight[s][f] = w;
    }
  }
  auto by_pref = [&](VertexId owner) {
    return [&, owner](VertexId a, VertexId b) {
      const double wa = pair_weight[owner].at(a), wb = pair_weight[owner].at(b);
      if (wa != wb) return wa > wb;
      return a < b;
    };
  };
  for (VertexId v = 0; v < n; ++v) {
    auto& lst = split.is_seed[v] ? seed_pref[v] : nonseed_pref[v];
    for (const auto& [u, w] : pair_weight[v]) {
      (void)w;
      lst.push_back(u);
    }
    std::sort(lst.begin(), lst.end(), by_pref(v));
  }
  // Rank of each seed inside each non-seed's list, for O(1) comparisons.
  std::vector<std::map<VertexId, std::int32_t>> rank(static_cast<std::size_t>(n));
  for (VertexId f = 0; f < n; ++f)
    for (std::size_t i = 0; i < nonseed_pref[f].size(); ++i)
      rank[f][nonseed_pref[f][i]] = static_cast<std::int32_t>(i);

  // Deferred acceptance, seeds proposing. A rejection re-queues the jilted
  // seed, which resumes from its next preference; each pair is proposed at
  // most once, so the sweep terminates.
  std::vector<std::size_t> next_pref(static_cast<std::size_t>(n), 0);
  std::vector<VertexId> matched_to(static_cast<std::size_t>(n), -1);  // per non-seed
  std::vector<std::vector<VertexId>> waitlist(static_cast<std::size_t>(n));
  std::deque<VertexId> free_seeds(split.seeds.begin(), split.seeds.end());
  std::vector<std::uint8_t> queued(static_cast<std::size_t>(n), 0);
  for (VertexId s : split.seeds) queued[s] = 1;

  while (!free_seeds.empty()) {
    const VertexId s = free_seeds.front();
    free_seeds.pop_front();
    queued[s] = 0;
    while (static_cast<std::int64_t>(waitlist[s].size()) < cap &&
           next_pref[s] < seed_pref[s].size()) {
      const VertexId f = seed_pref[s][next_pref[s]++];
      if (matched_to[f] < 0) {
        matched_to[f] = s;
        waitlist[s].push_back(f);
      } else if (rank[f].at(s) < rank[f].at(matched_to[f])) {
        const VertexId old = matched_to[f];
        auto& wl = waitlist[old];
        wl.erase(std::find(wl.begin(), wl.end(), f));
        matched_to[f] = s;
        waitlist[s].push_back(f);
        if (!queued[old]) {
          queued[old] = 1;
          free_seeds.push_back(old);
        }
      }
    }
  }

  if (trace) {
    trace->seed_pref = seed_pref;
    trace->nonseed_pref = nonseed_pref;
    trace->waitlist.assign(static_cast<std::size_t>(n), {});
    trace->waitlist_cap = cap;
  }

  // Cluster formation: accepted entries join in the seed's preference order
  // while the weight bound allows; everything else becomes a singleton.
  std::vector<Cluster> clusters;
  std::vector<std::uint8_t> placed(static_cast<std::size_t>(n), 0);
  for (VertexId s : split.seeds) {
    Cluster c{s, {s}, hg.vertex_weight[s]};
    std::sort(waitlist[s].begin(), waitlist[s].end(), by_pref(s));
    if (trace) trace->waitlist[s] = waitlist[s];
    for (VertexId f : waitlist[s]) {
      if (c.weight + hg.vertex_weight[f] <= max_cluster_weight) {
        c.members.push_back(f);
        c.weight += hg.vertex_weight[f];
        placed[f] = 1;
      }
    }
    placed[s] = 1;
    clusters.push_back(std::move(c));
  }
  for (VertexId v = 0; v < n; ++v)
    if (!placed[v]) clusters.push_back({v, {v}, hg.vertex_weight[v]});
  return canonicalize(n, std::move(clusters));
}

CoarseLevel contract(const Hypergraph& hg, const Aggregation& agg,
                     CoarseProvenance provenance) {
  const std::int32_t nc = static_cast<std::int32_t>(agg.clusters.size());
  CoarseLevel lvl;
  lvl.provenance = std::move(provenance);
  lvl.map = agg.cluster_of;

  std::vector<double> vw(static_cast<std::size_t>(nc), 0.0);
  for (std::int32_t c = 0; c < nc; ++c)
    for (VertexId v : agg.clusters[c].members) vw[c] += hg.vertex_weight[v];

  std::map<std::vector<VertexId>, double> coarse_edges;
  std::vector<VertexId> key;
  for (EdgeId e = 0; e < hg.n_edges(); ++e) {
    key.clear();
    for (VertexId v : hg.pins[e]) key.push_back(agg.cluster_of[v]);
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (key.size() <= 1) {
      lvl.dropped_singleton_weight += hg.edge_weight[e];
      continue;
    }
    coarse_edges[key] += hg.edge_weight[e];
  }

  std::vector<std::vector<VertexId>> pin_lists;
  std::vector<double> ew;
  pin_lists.reserve(coarse_edges.size());
  for (auto& [pins, w] : coarse_edges) {
    pin_lists.push_back(pins);
    ew.push_back(w);
  }
  lvl.coarse = make_hypergraph(nc, std::move(pin_lists), std::move(ew), std::move(vw));
  return lvl;
}

}  // namespace hyperpart
