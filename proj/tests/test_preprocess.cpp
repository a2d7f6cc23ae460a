#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "support.hpp"
#include "treesieve/oracle.hpp"
#include "treesieve/preprocess.hpp"

using namespace treesieve;
using namespace tsupport;

TEST_CASE("K3 contracts to a single vertex of weight 3") {
  auto res = eliminate_triangles(complete_graph(3));
  CHECK(res.graph.n == 1);
  CHECK(res.graph.edge_count() == 0);
  CHECK(res.graph.weights == std::vector<int64_t>{3});
  CHECK(res.trace.steps.size() == 1);
}

TEST_CASE("triangle with a pendant becomes an edge with weights 3 and 1") {
  Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  auto res = eliminate_triangles(g);
  CHECK(res.graph.n == 2);
  CHECK(res.graph.edge_count() == 1);
  std::vector<int64_t> w = res.graph.weights;
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<int64_t>{1, 3});
}

TEST_CASE("triangle-free input passes through with unit weights") {
  Graph c5 = cycle_graph(5);
  auto res = eliminate_triangles(c5);
  CHECK(res.graph.n == 5);
  CHECK(res.graph.edges == c5.edges);
  CHECK(res.trace.steps.empty());
  for (int v = 0; v < 5; ++v) CHECK(res.graph.weight(v) == 1);
}

TEST_CASE("degree above three is rejected") {
  CHECK_THROWS_AS(eliminate_triangles(star_graph(4)), std::invalid_argument);
  DetectionPlan p;
  p.seed = 1;
  CHECK_THROWS_AS(kpath_subcubic(star_graph(4), 3, p), std::invalid_argument);
}

TEST_CASE("elimination output is triangle-free subcubic and weight-preserving") {
  Rng rng(211);
  for (int it = 0; it < 60; ++it) {
    Graph g = random_subcubic_graph(3 + static_cast<int>(rng.next_below(8)), rng);
    auto res = eliminate_triangles(g);
    CHECK(res.graph.triangles().empty());
    CHECK(res.graph.max_degree() <= 3);
    CHECK(static_cast<int>(res.trace.steps.size()) <= g.n);
    int64_t total = 0;
    for (int v = 0; v < res.graph.n; ++v) total += res.graph.weight(v);
    CHECK(total == g.n);
  }
}

TEST_CASE("elimination preserves weighted path existence both ways") {
  Rng rng(223);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_subcubic_graph(3 + static_cast<int>(rng.next_below(6)), rng);
    auto res = eliminate_triangles(g);
    for (int k = 1; k <= g.n; ++k) {
      CHECK(oracle::brute_kpath(g, k) == oracle::brute_weighted_path(res.graph, k, k));
    }
  }
}

TEST_CASE("trace serializes to json") {
  auto res = eliminate_triangles(complete_graph(3));
  auto j = res.trace.to_json();
  CHECK(j["steps"].size() == 1);
  CHECK(j["final_weights"].size() == 1);
}

TEST_CASE("subcubic k-path: C6 is its own 6-path") {
  DetectionPlan p;
  p.seed = 5;
  p.confidence_boost = 2;
  p.threads = 2;
  CHECK(kpath_subcubic(cycle_graph(6), 6, p).yes);
}

TEST_CASE("subcubic k-path: two triangles joined by an edge") {
  // n = 6, subcubic: triangle 0-1-2, triangle 3-4-5, bridge 2-3
  Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
  REQUIRE(g.max_degree() == 3);
  for (int k = 1; k <= 6; ++k) {
    DetectionPlan p;
    p.seed = 40 + k;
    p.confidence_boost = 4;
    p.threads = 2;
    CHECK(kpath_subcubic(g, k, p).yes == oracle::brute_kpath(g, k));
  }
}

TEST_CASE("subcubic k-path matches brute force on random graphs") {
  Rng rng(227);
  for (int it = 0; it < 12; ++it) {
    Graph g = random_subcubic_graph(3 + static_cast<int>(rng.next_below(5)), rng);
    for (int k = 2; k <= g.n; k += 2) {
      DetectionPlan p;
      p.seed = 5000 + 97 * it + k;
      p.confidence_boost = 4;
      p.threads = 2;
      CHECK(kpath_subcubic(g, k, p).yes == oracle::brute_kpath(g, k));
    }
  }
}
