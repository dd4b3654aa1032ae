#include "hyperpart/algdist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperpart/rng.hpp"

namespace hyperpart {

RelaxOperator build_operator(const Hypergraph& hg) {
  const std::int32_t n = hg.n_vertices();
  const std::int32_t m = hg.n_edges();
  RelaxOperator op;
  op.hg = &hg;
  op.n_nodes = n + m;
  op.edge_coef.resize(static_cast<std::size_t>(m));
  op.inv_degree.assign(static_cast<std::size_t>(n + m), 0.0);
  op.active.assign(static_cast<std::size_t>(n + m), 0);

  for (EdgeId e = 0; e < m; ++e) {
    const auto& p = hg.pins[e];
    op.edge_coef[e] = p.empty() ? 0.0 : hg.edge_weight[e] / static_cast<double>(p.size());
  }
  for (VertexId v = 0; v < n; ++v) {
    double d = 0.0;
    for (EdgeId e : hg.incident[v]) d += op.edge_coef[e];
    if (d > 0.0) {
      op.inv_degree[v] = 1.0 / d;
      op.active[v] = 1;
    }
  }
  for (EdgeId e = 0; e < m; ++e) {
    double d = 0.0;
    for (VertexId v : hg.pins[e]) d += hg.vertex_weight[v];
    if (d > 0.0) {
      op.inv_degree[n + e] = 1.0 / d;
      op.active[n + e] = 1;
    }
  }
  return op;
}

void RelaxOperator::apply(double omega, const std::vector<double>& in,
                          std::vector<double>& out) const {
  const std::int32_t n = hg->n_vertices();
  const std::int32_t m = hg->n_edges();
  out.resize(in.size());
  const double keep = 1.0 - omega;
  for (VertexId v = 0; v < n; ++v) {
    if (!active[v]) {
      out[v] = 0.0;
      continue;
    }
    double s = 0.0;
    for (EdgeId e : hg->incident[v]) s += edge_coef[e] * in[n + e];
    out[v] = omega * s * inv_degree[v] + keep * in[v];
  }
  for (EdgeId e = 0; e < m; ++e) {
    const std::int32_t node = n + e;
    if (!active[node]) {
      out[node] = 0.0;
      continue;
    }
    double s = 0.0;
    for (VertexId v : hg->pins[e]) s += hg->vertex_weight[v] * in[v];
    out[node] = omega * s * inv_degree[node] + keep * in[node];
  }
}

Embeddings relax(const Hypergraph& hg, const AlgdistConfig& cfg,
                 const std::vector<std::vector<double>>* initial,
                 const RelaxObserver* observer) {
  if (!(cfg.omega > 0.0) || cfg.omega > 1.0)
    throw std::invalid_argument("relax: omega must be in (0, 1]");
  if (cfg.test_vectors < 1) throw std::invalid_argument("relax: need at least one test vector");
  if (cfg.iterations < 0) throw std::invalid_argument("relax: negative iteration count");

  const RelaxOperator op = build_operator(hg);
  const std::int32_t n_nodes = op.n_nodes;

  Embeddings emb;
  emb.n_vertices = hg.n_vertices();
  emb.n_edges = hg.n_edges();
  emb.test_vectors = cfg.test_vectors;
  emb.active = op.active;
  emb.coord.assign(static_cast<std::size_t>(cfg.test_vectors),
                   std::vector<double>(static_cast<std::size_t>(n_nodes), 0.0));

  if (initial) {
    if (initial->size() != static_cast<std::size_t>(cfg.test_vectors))
      throw std::invalid_argument("relax: initial vector count does not match test_vectors");
    for (std::int32_t r = 0; r < cfg.test_vectors; ++r) {
      if ((*initial)[r].size() != static_cast<std::size_t>(n_nodes))
        throw std::invalid_argument("relax: initial vector has wrong length");
      for (std::int32_t i = 0; i < n_nodes; ++i)
        emb.coord[r][i] = op.active[i] ? (*initial)[r][i] : 0.0;
    }
  } else {
    for (std::int32_t r = 0; r < cfg.test_vectors; ++r)
      for (std::int32_t i = 0; i < n_nodes; ++i)
        if (op.active[i])
          emb.coord[r][i] = node_u01(cfg.rng_seed, static_cast<std::uint32_t>(r),
                                     static_cast<std::uint64_t>(i));
  }

  std::vector<double> next(static_cast<std::size_t>(n_nodes), 0.0);
  for (std::int32_t r = 0; r < cfg.test_vectors; ++r) {
    auto& x = emb.coord[r];
    for (std::int32_t it = 0; it < cfg.iterations; ++it) {
      op.apply(cfg.omega, x, next);

      double lo = 0.0, hi = 0.0;
      bool seen = false;
      for (std::int32_t i = 0; i < n_nodes; ++i) {
        if (!op.active[i]) continue;
        if (!seen) {
          lo = hi = next[i];
          seen = true;
        } else {
          lo = std::min(lo, next[i]);
          hi = std::max(hi, next[i]);
        }
      }

      if (!seen) {
        // Nothing to relax (no active nodes); vector stays all-zero.
      } else if (hi == lo) {
        // Degenerate range: the sweep collapsed every active node onto one
        // value. The common value carries no pairwise information, so centre
        // it and break the tie with seeded noise instead of rescaling.
        ++emb.perturbation_events;
        for (std::int32_t i = 0; i < n_nodes; ++i) {
          if (!op.active[i]) continue;
          const double u = node_u01(mix_seed(cfg.rng_seed, 0x7e57 + static_cast<std::uint64_t>(it)),
                                    static_cast<std::uint32_t>(r), static_cast<std::uint64_t>(i));
          next[i] = (u - 0.5) * 2e-9;
        }
      } else {
        // Affine map onto [-1/2, 1/2]. Dividing by (hi - lo) elementwise makes
        // the attained extremes exactly -0.5 and +0.5 in floating point.
        const double range = hi - lo;
        for (std::int32_t i = 0; i < n_nodes; ++i) {
          if (!op.active[i]) continue;
          next[i] = (next[i] - lo) / range - 0.5;
        }
      }

      x.swap(next);
      if (observer) (*observer)(r, it, x);
    }
  }
  return emb;
}

double algdist(const Embeddings& emb, VertexId i, VertexId j) {
  double d = 0.0;
  for (std::int32_t r = 0; r < emb.test_vectors; ++r)
    d = std::max(d, std::fabs(emb.coord[r][i] - emb.coord[r][j]));
  return d;
}

std::vector<double> edge_diameters(const Embeddings& emb, const Hypergraph& hg) {
  std::vector<double> diam(static_cast<std::size_t>(hg.n_edges()), 0.0);
  for (EdgeId e = 0; e < hg.n_edges(); ++e) {
    const auto& p = hg.pins[e];
    if (p.size() < 2) continue;
    double worst = 0.0;
    for (std::int32_t r = 0; r < emb.test_vectors; ++r) {
      double lo = emb.coord[r][p[0]], hi = lo;
      for (std::size_t i = 1; i < p.size(); ++i) {
        const double c = emb.coord[r][p[i]];
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      worst = std::max(worst, hi - lo);
    }
    diam[e] = worst;
  }
  return diam;
}

std::vector<double> edge_algebraic_weights(const Embeddings& emb, const Hypergraph& hg,
                                           const EdgeWeightParams& params) {
  const std::vector<double> diam = edge_diameters(emb, hg);
  std::vector<double> rho(diam.size(), 0.0);
  for (EdgeId e = 0; e < hg.n_edges(); ++e) {
    bool any_active = false;
    for (VertexId v : hg.pins[e])
      if (emb.active[v]) any_active = true;
    if (!hg.pins[e].empty() && !any_active) {
      rho[e] = hg.edge_weight[e];  // defensive: no relaxed pins to measure
      continue;
    }
    rho[e] = std::min(params.weight_cap, 1.0 / std::max(diam[e], params.distance_floor));
  }
  return rho;
}

}  // namespace hyperpart
