#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hyperpart/hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperpart;
namespace to = testing_oracles;

namespace {

Hypergraph path(std::int32_t n) {
  std::vector<std::vector<VertexId>> pins;
  for (VertexId v = 0; v + 1 < n; ++v) pins.push_back({v, v + 1});
  return make_hypergraph(n, std::move(pins));
}

Partition two_way(std::vector<PartId> part) {
  Partition p;
  p.k = 2;
  p.part = std::move(part);
  return p;
}

}  // namespace

TEST_CASE("make_hypergraph normalizes pins and defaults weights") {
  Hypergraph hg = make_hypergraph(3, {{2, 0, 2, 1}, {1, 0}});
  CHECK(hg.n_vertices() == 3);
  CHECK(hg.n_edges() == 2);
  CHECK(hg.pins[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(hg.pins[1] == std::vector<VertexId>{0, 1});
  CHECK(hg.vertex_weight == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(hg.edge_weight == std::vector<double>{1.0, 1.0});
  CHECK(hg.n_pins() == 5);
  CHECK(hg.total_vertex_weight() == doctest::Approx(3.0));
  CHECK(validate(hg).empty());
  // Inverse incidence mirrors the pin lists.
  CHECK(hg.incident[0] == std::vector<EdgeId>{0, 1});
  CHECK(hg.incident[2] == std::vector<EdgeId>{0});
}

TEST_CASE("cut weight on hand instances") {
  SUBCASE("path of four, middle split cuts one edge") {
    Hypergraph hg = path(4);
    CHECK(cut_weight(hg, two_way({0, 0, 1, 1})) == doctest::Approx(1.0));
  }
  SUBCASE("everything in one part cuts nothing") {
    Hypergraph hg = path(4);
    CHECK(cut_weight(hg, two_way({0, 0, 0, 0})) == doctest::Approx(0.0));
  }
  SUBCASE("a spanning edge pays its full weight once") {
    Hypergraph hg = make_hypergraph(3, {{0, 1, 2}}, {5.0});
    CHECK(cut_weight(hg, two_way({0, 1, 1})) == doctest::Approx(5.0));
    CHECK(cut_weight(hg, two_way({0, 1, 0})) == doctest::Approx(5.0));
  }
}

TEST_CASE("imbalance ratio on hand instances") {
  Hypergraph hg = path(4);
  CHECK(imbalance(hg, two_way({0, 0, 1, 1})) == doctest::Approx(1.0));
  CHECK(imbalance(hg, two_way({0, 0, 0, 1})) == doctest::Approx(1.5));

  Hypergraph weighted = make_hypergraph(3, {{0, 1}, {1, 2}}, {}, {2.0, 1.0, 1.0});
  CHECK(imbalance(weighted, two_way({0, 1, 1})) == doctest::Approx(1.0));

  SUBCASE("k = 1 is the whole graph at perfect balance") {
    Partition p;
    p.k = 1;
    p.part.assign(4, 0);
    CHECK(cut_weight(hg, p) == doctest::Approx(0.0));
    CHECK(imbalance(hg, p) == doctest::Approx(1.0));
  }
}

TEST_CASE("cut_report matches the scalar entry points") {
  Hypergraph hg = to::random_hypergraph(7, 12, 18, 4, /*unit_weights=*/false);
  Rng rng(3);
  Partition p;
  p.k = 3;
  for (VertexId v = 0; v < hg.n_vertices(); ++v)
    p.part.push_back(static_cast<PartId>(rng.index(3)));
  const CutReport r = cut_report(hg, p);
  CHECK(r.cut_weight == doctest::Approx(cut_weight(hg, p)));
  CHECK(r.imbalance == doctest::Approx(imbalance(hg, p)));
  double total = 0.0;
  for (double w : r.part_weights) total += w;
  CHECK(total == doctest::Approx(hg.total_vertex_weight()));
}

TEST_CASE("cut weight is invariant under part relabeling") {
  Hypergraph hg = to::random_hypergraph(11, 10, 15, 5);
  Rng rng(5);
  Partition p;
  p.k = 3;
  for (VertexId v = 0; v < hg.n_vertices(); ++v)
    p.part.push_back(static_cast<PartId>(rng.index(3)));
  Partition q = p;
  const PartId relabel[3] = {2, 0, 1};
  for (auto& x : q.part) x = relabel[x];
  CHECK(cut_weight(hg, p) == doctest::Approx(cut_weight(hg, q)));
}

TEST_CASE("partition validation failures throw") {
  Hypergraph hg = path(3);
  Partition p = two_way({0, 1});
  CHECK_THROWS_AS(cut_weight(hg, p), std::invalid_argument);  // size mismatch
  p = two_way({0, 2, 1});
  CHECK_THROWS_AS(cut_weight(hg, p), std::invalid_argument);  // id out of range
  CHECK_THROWS_AS(imbalance(hg, p), std::invalid_argument);
  p = two_way({0, 1, 1});
  p.k = 0;
  CHECK_THROWS_AS(imbalance(hg, p), std::invalid_argument);
}

TEST_CASE("star expansion link structure") {
  SUBCASE("one edge over two vertices gives two links") {
    Hypergraph hg = make_hypergraph(2, {{0, 1}});
    StarExpansion se = star_expansion(hg);
    CHECK(se.n_vertices == 2);
    CHECK(se.n_edges == 1);
    CHECK(se.n_links() == 2);
    CHECK(se.edge_links[0] == std::vector<VertexId>{0, 1});
    CHECK(se.vertex_links[0] == std::vector<EdgeId>{0});
  }
  SUBCASE("edgeless hypergraph has no links") {
    Hypergraph hg = make_hypergraph(4, {});
    StarExpansion se = star_expansion(hg);
    CHECK(se.n_links() == 0);
    CHECK(se.vertex_links.size() == 4);
  }
  SUBCASE("link count always equals pin count") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Hypergraph hg = to::random_hypergraph(seed, 9, 14, 4);
      StarExpansion se = star_expansion(hg);
      CHECK(se.n_links() == hg.n_pins());
      // Both directions enumerate the same incidences.
      std::int64_t back = 0;
      for (const auto& links : se.vertex_links) back += static_cast<std::int64_t>(links.size());
      CHECK(back == hg.n_pins());
    }
  }
}

TEST_CASE("validate reports structural violations by code") {
  Hypergraph hg = path(3);
  CHECK(validate(hg).empty());

  auto codes = [](const std::vector<Finding>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs) out.push_back(f.code);
    return out;
  };

  SUBCASE("empty edge") {
    hg.pins.push_back({});
    hg.edge_weight.push_back(1.0);
    hg.finalize();
    auto found = codes(validate(hg));
    CHECK(std::count(found.begin(), found.end(), "empty-edge") == 1);
  }
  SUBCASE("pin out of range survives finalize and is flagged") {
    hg.pins[0].push_back(99);
    auto found = codes(validate(hg));
    CHECK(std::count(found.begin(), found.end(), "pin-out-of-range") == 1);
  }
  SUBCASE("nonpositive weights") {
    hg.vertex_weight[1] = 0.0;
    hg.edge_weight[0] = -2.0;
    auto found = codes(validate(hg));
    CHECK(std::count(found.begin(), found.end(), "nonpositive-vertex-weight") == 1);
    CHECK(std::count(found.begin(), found.end(), "nonpositive-edge-weight") == 1);
  }
  SUBCASE("stale inverse incidence") {
    hg.incident[0].clear();
    auto found = codes(validate(hg));
    CHECK(std::count(found.begin(), found.end(), "incidence-mismatch") >= 1);
  }
}

TEST_CASE("finalize dedups pins before incidence is rebuilt") {
  Hypergraph hg;
  hg.vertex_weight = {1.0, 1.0};
  hg.edge_weight = {1.0};
  hg.pins = {{1, 0, 1, 1}};
  hg.finalize();
  CHECK(hg.pins[0] == std::vector<VertexId>{0, 1});
  CHECK(hg.incident[1] == std::vector<EdgeId>{0});
  CHECK(validate(hg).empty());
}
