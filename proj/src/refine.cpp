#include "hyperpart/refine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "hyperpart/rng.hpp"

namespace hyperpart {

namespace {

constexpr double kGainScale = 1e6;  // gains are bucketed at micro-unit resolution

double part0_weight(const Hypergraph& hg, const Partition& p) {
  double w0 = 0.0;
  for (VertexId v = 0; v < hg.n_vertices(); ++v)
    if (p.part[v] == 0) w0 += hg.vertex_weight[v];
  return w0;
}

double ratio_of(double w0, double w1, double t0, double t1) {
  return std::max(w0 / t0, w1 / t1);
}

// Cut change if v switches sides: edges where v is alone on its side stop
// being cut, edges entirely on v's side become cut.
double move_gain(const Hypergraph& hg, const Partition& p,
                 const std::vector<std::int32_t>& cnt0,
                 const std::vector<std::int32_t>& cnt1, VertexId v) {
  double g = 0.0;
  const bool side0 = p.part[v] == 0;
  for (EdgeId e : hg.incident[v]) {
    const std::int32_t same = side0 ? cnt0[e] : cnt1[e];
    const std::int32_t other = side0 ? cnt1[e] : cnt0[e];
    if (same == 1) g += hg.edge_weight[e];
    if (other == 0) g -= hg.edge_weight[e];
  }
  return g;
}

}  // namespace

double bisection_balance(const Hypergraph& hg, const Partition& p, double frac0) {
  const double total = hg.total_vertex_weight();
  const double w0 = part0_weight(hg, p);
  return ratio_of(w0, total - w0, frac0 * total, (1.0 - frac0) * total);
}

Partition fm_refine_targets(const Hypergraph& hg, Partition p, const RefineConfig& cfg,
                            double frac0) {
  if (p.k != 2 || p.part.size() != static_cast<std::size_t>(hg.n_vertices()))
    throw std::invalid_argument("fm_refine: expects a bisection of this hypergraph");
  const std::int32_t n = hg.n_vertices();
  const double total = hg.total_vertex_weight();
  const double t0 = frac0 * total, t1 = (1.0 - frac0) * total;
  if (!(t0 > 0.0) || !(t1 > 0.0))
    throw std::invalid_argument("fm_refine: part weight targets must be positive");

  // Feasibility is strict (ratio < tolerance), so a ratio exactly at the
  // bound must register as a positive violation or it would never be repaired.
  auto violation = [&](double ratio) {
    return ratio < cfg.tolerance ? 0.0 : ratio - cfg.tolerance + 1e-6;
  };

  std::vector<std::int32_t> cnt0(static_cast<std::size_t>(hg.n_edges()));
  std::vector<std::int32_t> cnt1(static_cast<std::size_t>(hg.n_edges()));

  for (std::int32_t pass = 0; pass < cfg.max_passes; ++pass) {
    std::fill(cnt0.begin(), cnt0.end(), 0);
    std::fill(cnt1.begin(), cnt1.end(), 0);
    for (EdgeId e = 0; e < hg.n_edges(); ++e)
      for (VertexId v : hg.pins[e]) (p.part[v] == 0 ? cnt0[e] : cnt1[e])++;
    double w0 = part0_weight(hg, p);
    double cut = cut_weight(hg, p);

    const double cut_in = cut;
    const double viol_in = violation(ratio_of(w0, total - w0, t0, t1));

    // All unlocked vertices are candidates. Boundary vertices are the only
    // ones with positive gain, but interior moves must stay available so an
    // unbalanced zero-cut input can still be repaired.
    std::map<std::int64_t, std::set<VertexId>> buckets;
    std::vector<std::int64_t> key(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> locked(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < n; ++v) {
      key[v] = std::llround(move_gain(hg, p, cnt0, cnt1, v) * kGainScale);
      buckets[key[v]].insert(v);
    }

    struct Move {
      VertexId v;
      PartId from;
    };
    std::vector<Move> moves;
    // Best prefix: smallest (violation, cut, length). A prefix is acceptable
    // when it strictly reduces the violation (paying cut to restore balance
    // is the right trade) or matches the input violation without a worse cut.
    std::size_t best_len = 0;
    double best_viol = viol_in, best_cut = cut_in;

    while (true) {
      // Highest-gain admissible move; ties prefer draining the side that
      // overshoots its target more, then the lower vertex id.
      VertexId chosen = -1;
      const double ratio_now = ratio_of(w0, total - w0, t0, t1);
      const double limit = std::max(cfg.tolerance, ratio_now);
      for (auto it = buckets.rbegin(); it != buckets.rend() && chosen < 0; ++it) {
        const double over0 = w0 / t0, over1 = (total - w0) / t1;
        const PartId prefer_from = over0 >= over1 ? 0 : 1;
        VertexId fallback = -1;
        for (VertexId v : it->second) {
          const double wv = hg.vertex_weight[v];
          const double nw0 = p.part[v] == 0 ? w0 - wv : w0 + wv;
          if (ratio_of(nw0, total - nw0, t0, t1) > limit) continue;
          if (p.part[v] == prefer_from) {
            chosen = v;
            break;
          }
          if (fallback < 0) fallback = v;
        }
        if (chosen < 0) chosen = fallback;
      }
      if (chosen < 0) break;

      const double gain = move_gain(hg, p, cnt0, cnt1, chosen);
      const PartId from = p.part[chosen];
      moves.push_back({chosen, from});
      locked[chosen] = 1;
      buckets[key[chosen]].erase(chosen);
      if (buckets[key[chosen]].empty()) buckets.erase(key[chosen]);

      p.part[chosen] = 1 - from;
      w0 += from == 0 ? -hg.vertex_weight[chosen] : hg.vertex_weight[chosen];
      cut -= gain;
      for (EdgeId e : hg.incident[chosen]) {
        (from == 0 ? cnt0[e] : cnt1[e])--;
        (from == 0 ? cnt1[e] : cnt0[e])++;
      }
      // Re-bucket every unlocked vertex sharing an edge with the moved one.
      for (EdgeId e : hg.incident[chosen]) {
        for (VertexId u : hg.pins[e]) {
          if (locked[u]) continue;
          const std::int64_t k2 = std::llround(move_gain(hg, p, cnt0, cnt1, u) * kGainScale);
          if (k2 == key[u]) continue;
          buckets[key[u]].erase(u);
          if (buckets[key[u]].empty()) buckets.erase(key[u]);
          key[u] = k2;
          buckets[k2].insert(u);
        }
      }

      const double viol = violation(ratio_of(w0, total - w0, t0, t1));
      if (viol < viol_in - 1e-12 || (viol <= viol_in + 1e-12 && cut <= cut_in + 1e-9)) {
        if (viol < best_viol - 1e-12 ||
            (viol <= best_viol + 1e-12 && cut < best_cut - 1e-9)) {
          best_viol = viol;
          best_cut = cut;
          best_len = moves.size();
        }
      }
    }

    // Roll back to the best prefix.
    for (std::size_t i = moves.size(); i > best_len; --i) p.part[moves[i - 1].v] = moves[i - 1].from;
    if (best_len == 0) break;  // pass produced no improvement; stop early
  }
  return p;
}

Partition fm_refine(const Hypergraph& hg, Partition p, const RefineConfig& cfg) {
  return fm_refine_targets(hg, std::move(p), cfg, 0.5);
}

Partition initial_bisect_targets(const Hypergraph& hg, const RefineConfig& cfg, double frac0) {
  const std::int32_t n = hg.n_vertices();
  if (n < 1) throw std::invalid_argument("initial_bisect: empty hypergraph");
  const double total = hg.total_vertex_weight();
  const double t0 = frac0 * total;

  Rng rng(mix_seed(cfg.rng_seed, 0xb15ec7));
  Partition p;
  p.k = 2;
  p.part.assign(static_cast<std::size_t>(n), 1);

  std::vector<std::uint8_t> reached(static_cast<std::size_t>(n), 0);
  std::deque<VertexId> frontier;
  auto seed_from_heaviest = [&]() {
    double best = -1.0;
    for (VertexId v = 0; v < n; ++v)
      if (!reached[v]) best = std::max(best, hg.vertex_weight[v]);
    std::vector<VertexId> ties;
    for (VertexId v = 0; v < n; ++v)
      if (!reached[v] && hg.vertex_weight[v] == best) ties.push_back(v);
    const VertexId start = ties[rng.index(ties.size())];
    reached[start] = 1;
    frontier.push_back(start);
  };

  double w0 = 0.0;
  std::vector<VertexId> grown;
  std::vector<VertexId> batch;
  while (w0 < t0) {
    if (frontier.empty()) {
      bool any = std::find(reached.begin(), reached.end(), 0) != reached.end();
      if (!any) break;
      seed_from_heaviest();
    }
    const VertexId v = frontier.front();
    frontier.pop_front();
    p.part[v] = 0;
    w0 += hg.vertex_weight[v];
    grown.push_back(v);

    batch.clear();
    for (EdgeId e : hg.incident[v])
      for (VertexId u : hg.pins[e])
        if (!reached[u]) {
          reached[u] = 1;
          batch.push_back(u);
        }
    std::sort(batch.begin(), batch.end());
    rng.shuffle(batch);
    for (VertexId u : batch) frontier.push_back(u);
  }

  // The grow stops at the first prefix reaching the target; dropping the last
  // vertex may land closer to it.
  if (grown.size() > 1) {
    const double wl = hg.vertex_weight[grown.back()];
    if (std::fabs(w0 - wl - t0) < std::fabs(w0 - t0)) p.part[grown.back()] = 1;
  }
  return fm_refine_targets(hg, std::move(p), cfg, frac0);
}

Partition initial_bisect(const Hypergraph& hg, const RefineConfig& cfg) {
  return initial_bisect_targets(hg, cfg, 0.5);
}

Partition project(const Partition& coarse, const std::vector<std::int32_t>& map,
                  std::int32_t n_fine) {
  if (map.size() != static_cast<std::size_t>(n_fine))
    throw std::invalid_argument("project: contraction map size does not match fine vertex count");
  Partition fine;
  fine.k = coarse.k;
  fine.part.resize(static_cast<std::size_t>(n_fine));
  for (std::int32_t v = 0; v < n_fine; ++v) {
    const std::int32_t c = map[v];
    if (c < 0 || static_cast<std::size_t>(c) >= coarse.part.size())
      throw std::invalid_argument("project: map entry out of range at vertex " + std::to_string(v));
    fine.part[v] = coarse.part[c];
  }
  return fine;
}

}  // namespace hyperpart
