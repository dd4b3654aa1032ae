#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "hyperpart/hypergraph.hpp"
#include "hyperpart/io.hpp"

using namespace hyperpart;
namespace fs = std::filesystem;

namespace {

// Writes content to a fresh file under the system temp dir and returns its path.
std::string temp_file(const std::string& tag, const std::string& content) {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("hyperpart_io_" + tag + "_" + std::to_string(counter++) + ".txt");
  std::ofstream out(p);
  out << content;
  return p.string();
}

// Order-insensitive structural equality: same vertex count and the same
// multiset of (weight, pin list) edges.
bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges()) return false;
  using Key = std::pair<std::vector<VertexId>, double>;
  std::vector<Key> ea, eb;
  for (EdgeId e = 0; e < a.n_edges(); ++e) ea.push_back({a.pins[e], a.edge_weight[e]});
  for (EdgeId e = 0; e < b.n_edges(); ++e) eb.push_back({b.pins[e], b.edge_weight[e]});
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb && a.vertex_weight == b.vertex_weight;
}

}  // namespace

TEST_CASE("row-net loading of an identity matrix gives singleton edges") {
  std::string p = temp_file("identity",
                            "%%MatrixMarket matrix coordinate pattern general\n"
                            "3 3 3\n"
                            "1 1\n2 2\n3 3\n");
  Hypergraph hg = load_rownet_mtx(p);
  CHECK(hg.n_vertices() == 3);
  CHECK(hg.n_edges() == 3);
  for (EdgeId e = 0; e < 3; ++e) {
    CHECK(hg.pins[e].size() == 1);
    CHECK(hg.pins[e][0] == e);
  }
}

TEST_CASE("row-net loading of a dense 2x2 matrix") {
  std::string p = temp_file("dense",
                            "%%MatrixMarket matrix coordinate real general\n"
                            "% values are ignored under row-net semantics\n"
                            "2 2 4\n"
                            "1 1 3.5\n1 2 -1\n2 1 0.25\n2 2 9\n");
  Hypergraph hg = load_rownet_mtx(p);
  CHECK(hg.n_vertices() == 2);
  CHECK(hg.n_edges() == 2);
  CHECK(hg.pins[0] == std::vector<VertexId>{0, 1});
  CHECK(hg.pins[1] == std::vector<VertexId>{0, 1});
  CHECK(hg.edge_weight == std::vector<double>{1.0, 1.0});
}

TEST_CASE("symmetric storage mirrors off-diagonal entries") {
  std::string p = temp_file("sym",
                            "%%MatrixMarket matrix coordinate pattern symmetric\n"
                            "3 3 3\n"
                            "2 1\n3 1\n3 3\n");
  Hypergraph hg = load_rownet_mtx(p);
  // Row 1 collects the mirrored pins of (2,1) and (3,1).
  CHECK(hg.n_vertices() == 3);
  REQUIRE(hg.n_edges() == 3);
  CHECK(hg.pins[0] == std::vector<VertexId>{1, 2});
  CHECK(hg.pins[1] == std::vector<VertexId>{0});
  CHECK(hg.pins[2] == std::vector<VertexId>{0, 2});
}

TEST_CASE("duplicate coordinates collapse and empty rows are dropped") {
  std::string p = temp_file("dups",
                            "%%MatrixMarket matrix coordinate pattern general\n"
                            "3 2 4\n"
                            "1 1\n1 1\n3 1\n3 2\n");
  Hypergraph hg = load_rownet_mtx(p);
  CHECK(hg.n_vertices() == 2);
  CHECK(hg.n_edges() == 2);  // row 2 had no entries
  CHECK(hg.pins[0] == std::vector<VertexId>{0});
  CHECK(hg.pins[1] == std::vector<VertexId>{0, 1});
}

TEST_CASE("row-net parse errors carry the offending line") {
  SUBCASE("zero declared entries") {
    std::string p = temp_file("zero",
                              "%%MatrixMarket matrix coordinate pattern general\n"
                              "2 2 0\n");
    CHECK_THROWS_WITH_AS(load_rownet_mtx(p), doctest::Contains("zero pins"), ParseError);
  }
  SUBCASE("bad banner") {
    std::string p = temp_file("banner", "%%NotMatrixMarket whatever\n1 1 1\n1 1\n");
    try {
      load_rownet_mtx(p);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("column index out of range names its line") {
    std::string p = temp_file("range",
                              "%%MatrixMarket matrix coordinate pattern general\n"
                              "2 2 2\n"
                              "1 1\n"
                              "2 5\n");
    try {
      load_rownet_mtx(p);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("column index 5") != std::string::npos);
    }
  }
  SUBCASE("truncated entry list") {
    std::string p = temp_file("trunc",
                              "%%MatrixMarket matrix coordinate pattern general\n"
                              "2 2 3\n"
                              "1 1\n");
    CHECK_THROWS_AS(load_rownet_mtx(p), ParseError);
  }
  SUBCASE("zero-dimension matrix") {
    std::string p = temp_file("dim",
                              "%%MatrixMarket matrix coordinate pattern general\n"
                              "0 3 1\n1 1\n");
    CHECK_THROWS_WITH_AS(load_rownet_mtx(p), doctest::Contains("zero-dimension"), ParseError);
  }
  SUBCASE("missing file reports line 0") {
    try {
      load_rownet_mtx("/nonexistent/nowhere.mtx");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 0);
    }
  }
}

TEST_CASE("row-net save/load round-trip preserves structure") {
  Hypergraph hg = make_hypergraph(5, {{0, 1, 2}, {2, 3}, {3, 4}, {0, 4}});
  fs::path p = fs::temp_directory_path() / "hyperpart_io_roundtrip.mtx";
  save_rownet_mtx(hg, p.string());
  Hypergraph back = load_rownet_mtx(p.string());
  CHECK(isomorphic(hg, back));
  // Saving the reloaded copy again is byte-stable.
  fs::path q = fs::temp_directory_path() / "hyperpart_io_roundtrip2.mtx";
  save_rownet_mtx(back, q.string());
  std::ifstream a(p), b(q);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("native format round-trips weights") {
  Hypergraph hg = make_hypergraph(4, {{0, 1}, {1, 2, 3}}, {2.5, 0.75}, {1.0, 2.0, 1.0, 3.0});
  fs::path p = fs::temp_directory_path() / "hyperpart_io_native.hgr";
  save_native(hg, p.string());
  Hypergraph back = load_native(p.string());
  CHECK(isomorphic(hg, back));
  CHECK(back.edge_weight == hg.edge_weight);

  SUBCASE("unit vertex weights are omitted on disk and restored as units") {
    Hypergraph units = make_hypergraph(3, {{0, 1}, {1, 2}});
    fs::path q = fs::temp_directory_path() / "hyperpart_io_units.hgr";
    save_native(units, q.string());
    Hypergraph b2 = load_native(q.string());
    CHECK(b2.vertex_weight == std::vector<double>{1.0, 1.0, 1.0});
  }
}

TEST_CASE("native parse errors") {
  SUBCASE("edge with no pins") {
    std::string p = temp_file("nopins", "2 1\n1.0\n");
    CHECK_THROWS_WITH_AS(load_native(p), doctest::Contains("no pins"), ParseError);
  }
  SUBCASE("pin outside the vertex range") {
    std::string p = temp_file("badpin", "2 1\n1.0 0 2\n");
    CHECK_THROWS_AS(load_native(p), ParseError);
  }
  SUBCASE("wrong vertex weight count") {
    std::string p = temp_file("badw", "3 1\n1.0 0 1\n1 2\n");
    CHECK_THROWS_WITH_AS(load_native(p), doctest::Contains("exactly 3"), ParseError);
  }
  SUBCASE("comments and blank lines are skipped, with line numbers intact") {
    std::string p = temp_file("comments", "# header comment\n\n3 1\n# edge below\n2 0 1 2\n");
    Hypergraph hg = load_native(p);
    CHECK(hg.n_edges() == 1);
    CHECK(hg.edge_weight[0] == doctest::Approx(2.0));
    CHECK(hg.pins[0] == std::vector<VertexId>{0, 1, 2});
  }
}

TEST_CASE("load_auto dispatches on the banner") {
  std::string mtx = temp_file("auto1",
                              "%%MatrixMarket matrix coordinate pattern general\n"
                              "2 2 2\n1 1\n2 2\n");
  Hypergraph a = load_auto(mtx);
  CHECK(a.n_edges() == 2);
  CHECK(a.pins[0] == std::vector<VertexId>{0});

  std::string native = temp_file("auto2", "2 1\n4.0 0 1\n");
  Hypergraph b = load_auto(native);
  CHECK(b.n_edges() == 1);
  CHECK(b.edge_weight[0] == doctest::Approx(4.0));
}

TEST_CASE("generated benchmark inputs load cleanly") {
  Hypergraph hg = load_auto(std::string(HP_TEST_DATA_DIR) + "/grid2d_8x8.mtx");
  CHECK(hg.n_vertices() == 64);
  CHECK(hg.n_edges() == 112);
  CHECK(validate(hg).empty());
  for (const auto& pins : hg.pins) CHECK(pins.size() >= 2);
}
