#include "hyperpart/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace hyperpart {

std::int64_t Hypergraph::n_pins() const {
  std::int64_t total = 0;
  for (const auto& e : pins) total += static_cast<std::int64_t>(e.size());
  return total;
}

double Hypergraph::total_vertex_weight() const {
  double total = 0.0;
  for (double w : vertex_weight) total += w;
  return total;
}

void Hypergraph::finalize() {
  const std::int32_t n = n_vertices();
  for (auto& e : pins) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  incident.assign(n, {});
  for (EdgeId ei = 0; ei < n_edges(); ++ei) {
    for (VertexId v : pins[ei]) {
      if (v >= 0 && v < n) incident[v].push_back(ei);
    }
  }
  // Pin lists are visited in edge order, so each incident list is born sorted.
}

Hypergraph make_hypergraph(std::int32_t n_vertices,
                           std::vector<std::vector<VertexId>> pin_lists,
                           std::vector<double> edge_weights,
                           std::vector<double> vertex_weights) {
  Hypergraph hg;
  if (edge_weights.empty()) edge_weights.assign(pin_lists.size(), 1.0);
  if (vertex_weights.empty()) vertex_weights.assign(static_cast<std::size_t>(n_vertices), 1.0);
  if (edge_weights.size() != pin_lists.size())
    throw std::invalid_argument("make_hypergraph: edge weight count does not match edge count");
  if (vertex_weights.size() != static_cast<std::size_t>(n_vertices))
    throw std::invalid_argument("make_hypergraph: vertex weight count does not match vertex count");
  hg.vertex_weight = std::move(vertex_weights);
  hg.edge_weight = std::move(edge_weights);
  hg.pins = std::move(pin_lists);
  hg.finalize();
  return hg;
}

namespace {

void check_partition(const Hypergraph& hg, const Partition& p) {
  if (p.k < 1) throw std::invalid_argument("partition: k must be >= 1");
  if (p.part.size() != static_cast<std::size_t>(hg.n_vertices()))
    throw std::invalid_argument("partition: assignment size does not match vertex count");
  for (std::size_t v = 0; v < p.part.size(); ++v) {
    if (p.part[v] < 0 || p.part[v] >= p.k)
      throw std::invalid_argument("partition: part id out of range [0,k) at vertex " +
                                  std::to_string(v));
  }
}

}  // namespace

double cut_weight(const Hypergraph& hg, const Partition& p) {
  check_partition(hg, p);
  double cut = 0.0;
  for (EdgeId ei = 0; ei < hg.n_edges(); ++ei) {
    const auto& e = hg.pins[ei];
    if (e.size() < 2) continue;
    const PartId first = p.part[e[0]];
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (p.part[e[i]] != first) {
        cut += hg.edge_weight[ei];
        break;
      }
    }
  }
  return cut;
}

double imbalance(const Hypergraph& hg, const Partition& p) {
  check_partition(hg, p);
  std::vector<double> pw(static_cast<std::size_t>(p.k), 0.0);
  for (VertexId v = 0; v < hg.n_vertices(); ++v) pw[p.part[v]] += hg.vertex_weight[v];
  const double total = hg.total_vertex_weight();
  if (total <= 0.0) throw std::invalid_argument("imbalance: total vertex weight must be positive");
  const double target = total / static_cast<double>(p.k);
  double worst = 0.0;
  for (double w : pw) worst = std::max(worst, w / target);
  return worst;
}

CutReport cut_report(const Hypergraph& hg, const Partition& p) {
  CutReport r;
  r.cut_weight = cut_weight(hg, p);
  r.part_weights.assign(static_cast<std::size_t>(p.k), 0.0);
  for (VertexId v = 0; v < hg.n_vertices(); ++v) r.part_weights[p.part[v]] += hg.vertex_weight[v];
  r.imbalance = imbalance(hg, p);
  return r;
}

StarExpansion star_expansion(const Hypergraph& hg) {
  StarExpansion s;
  s.n_vertices = hg.n_vertices();
  s.n_edges = hg.n_edges();
  s.vertex_links = hg.incident;
  s.edge_links = hg.pins;
  return s;
}

std::int64_t StarExpansion::n_links() const {
  std::int64_t total = 0;
  for (const auto& l : edge_links) total += static_cast<std::int64_t>(l.size());
  return total;
}

std::vector<Finding> validate(const Hypergraph& hg) {
  std::vector<Finding> out;
  const std::int32_t n = hg.n_vertices();

  if (hg.pins.size() != hg.edge_weight.size())
    out.push_back({"edge-arrays-mismatch", "pin list count differs from edge weight count"});

  for (VertexId v = 0; v < n; ++v) {
    if (!(hg.vertex_weight[v] > 0.0))
      out.push_back({"nonpositive-vertex-weight",
                     "vertex " + std::to_string(v) + " has weight " +
                         std::to_string(hg.vertex_weight[v])});
  }

  const std::size_t m = std::min(hg.pins.size(), hg.edge_weight.size());
  for (std::size_t ei = 0; ei < m; ++ei) {
    if (!(hg.edge_weight[ei] > 0.0))
      out.push_back({"nonpositive-edge-weight",
                     "edge " + std::to_string(ei) + " has weight " +
                         std::to_string(hg.edge_weight[ei])});
    const auto& e = hg.pins[ei];
    if (e.empty()) {
      out.push_back({"empty-edge", "edge " + std::to_string(ei) + " has no pins"});
      continue;
    }
    std::unordered_set<VertexId> seen;
    for (VertexId v : e) {
      if (v < 0 || v >= n) {
        out.push_back({"pin-out-of-range", "edge " + std::to_string(ei) + " references vertex " +
                                               std::to_string(v)});
      } else if (!seen.insert(v).second) {
        out.push_back({"duplicate-pin", "edge " + std::to_string(ei) +
                                            " lists vertex " + std::to_string(v) + " twice"});
      }
    }
  }

  // Inverse incidence must be exactly the transpose of the pin lists.
  std::vector<std::vector<EdgeId>> expect(static_cast<std::size_t>(n));
  for (std::size_t ei = 0; ei < m; ++ei) {
    for (VertexId v : hg.pins[ei]) {
      if (v >= 0 && v < n) expect[v].push_back(static_cast<EdgeId>(ei));
    }
  }
  if (hg.incident.size() != static_cast<std::size_t>(n)) {
    out.push_back({"incidence-mismatch", "inverse incidence has wrong vertex count"});
  } else {
    for (VertexId v = 0; v < n; ++v) {
      auto sorted = hg.incident[v];
      std::sort(sorted.begin(), sorted.end());
      if (sorted != expect[v]) {
        out.push_back({"incidence-mismatch",
                       "inverse incidence of vertex " + std::to_string(v) +
                           " does not match the pin lists"});
      }
    }
  }
  return out;
}

}  // namespace hyperpart
