#include <algorithm>
#include <stdexcept>
#include <map>
#include <set>

#include "doctest.h"
#include "treesieve/coloring.hpp"
#include "treesieve/graph.hpp"
#include "treesieve/matching.hpp"
#include "treesieve/oracle.hpp"

using namespace treesieve;

namespace {

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_bernoulli(p)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, std::move(e));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

}  // namespace

TEST_CASE("edge list parsing normalizes and reports line numbers") {
  Graph p3 = parse_graph("1 2\n2 3\n");
  CHECK(p3.n == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.adj[1] == std::vector<int>{0, 2});

  Graph dedup = parse_graph("1 2\n2 1\n1 2\n");
  CHECK(dedup.edge_count() == 1);

  CHECK_THROWS_WITH_AS(parse_graph("1 2\n1 1\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_graph("3\n1 4\n"), doctest::Contains("out of range"), ParseError);
  CHECK_THROWS_AS(parse_graph("1 x\n"), ParseError);
}

TEST_CASE("DIMACS parsing") {
  Graph k3 = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  CHECK(k3.n == 3);
  CHECK(k3.edge_count() == 3);
  CHECK_THROWS_AS(parse_graph("p edge 3 1\ne 1 1\n"), ParseError);
}

TEST_CASE("weights and vertex-count header") {
  Graph g = parse_graph("4\nw 2 5\n1 2\n3 4\n");
  CHECK(g.n == 4);
  CHECK(g.weight(1) == 5);
  CHECK(g.weight(0) == 1);
  CHECK_THROWS_AS(parse_graph("w 1 0\n1 2\n"), ParseError);
}

TEST_CASE("parse-serialize-parse is the identity on normalized graphs") {
  Rng rng(51);
  for (int it = 0; it < 50; ++it) {
    Graph g = random_graph(1 + static_cast<int>(rng.next_below(8)), 0.4, rng);
    if (it % 3 == 0) {
      g.weights.assign(g.n, 1);
      for (auto& w : g.weights) w = 1 + static_cast<int64_t>(rng.next_below(4));
    }
    Graph h = parse_graph(serialize_graph(g));
    CHECK(h.n == g.n);
    CHECK(h.edges == g.edges);
    for (int v = 0; v < g.n; ++v) CHECK(h.weight(v) == g.weight(v));
  }
}

TEST_CASE("greedy coloring achieves the expected color counts") {
  CHECK(greedy_coloring(complete_graph(4)).d == 4);
  CHECK(greedy_coloring(cycle_graph(6)).d == 2);
  CHECK(greedy_coloring(Graph::from_edges(5, {})).d == 1);
  Rng rng(53);
  for (int it = 0; it < 100; ++it) {
    Graph g = random_graph(2 + static_cast<int>(rng.next_below(9)), 0.5, rng);
    ProperColoring c = greedy_coloring(g);
    CHECK_NOTHROW(c.validate(g));
    CHECK(c.d <= g.max_degree() + 1);
  }
}

TEST_CASE("independent set sampler output is independent and maximal") {
  Rng rng(59);
  Graph empty5 = Graph::from_edges(5, {});
  CHECK(sample_independent_set(empty5, rng).size() == 5);
  Graph k5 = complete_graph(5);
  std::map<int, int> first_counts;
  for (int it = 0; it < 2000; ++it) {
    auto s = sample_independent_set(k5, rng);
    REQUIRE(s.size() == 1);
    ++first_counts[s[0]];
  }
  for (auto [v, c] : first_counts) CHECK(c > 250);  // near-uniform over 5 vertices

  for (int it = 0; it < 200; ++it) {
    Graph g = random_graph(8, 0.35, rng);
    auto s = sample_independent_set(g, rng);
    std::set<int> in(s.begin(), s.end());
    for (int u : s)
      for (int w : g.adj[u]) CHECK_FALSE(in.count(w));
    for (int v = 0; v < g.n; ++v) {
      if (in.count(v)) continue;
      bool blocked = false;
      for (int w : g.adj[v]) blocked = blocked || in.count(w);
      CHECK(blocked);  // maximal
    }
  }
}

TEST_CASE("hyperplane rounding honors sign structure") {
  Rng rng(61);
  VectorColoring vc;
  vc.dim = 3;
  vc.value = 2.0;
  vc.vec = {{1, 0, 0}, {-1, 0, 0}, {1, 0, 0}};
  for (int it = 0; it < 200; ++it) {
    Bipartition p = hyperplane_bipartition(vc, rng);
    CHECK(p.side[0] != p.side[1]);  // antipodal vectors split
    CHECK(p.side[0] == p.side[2]);  // identical vectors agree
  }
}

TEST_CASE("hyperplane separation frequency matches the arccos law") {
  Rng rng(67);
  // two fixed unit vectors at a known angle
  VectorColoring vc;
  vc.dim = 2;
  vc.value = 10.0;
  const double angle = 1.1;
  vc.vec = {{1, 0}, {std::cos(angle), std::sin(angle)}};
  const int n = 20000;
  int split = 0;
  for (int it = 0; it < n; ++it) {
    Bipartition p = hyperplane_bipartition(vc, rng);
    split += p.side[0] != p.side[1];
  }
  const double want = angle / 3.14159265358979323846;
  const double sigma = std::sqrt(want * (1 - want) / n);
  CHECK(std::abs(split / static_cast<double>(n) - want) <= 3 * sigma);
}

TEST_CASE("vector coloring validation") {
  VectorColoring vc;
  vc.dim = 2;
  vc.value = 2.0;
  vc.vec = {{1, 0}, {0.5, 0}};
  Graph e1 = Graph::from_edges(2, {{0, 1}});
  CHECK_THROWS_AS(vc.validate(e1), std::invalid_argument);  // not unit
  vc.vec = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(vc.validate(e1), std::invalid_argument);  // dot too large
  vc.vec = {{1, 0}, {-1, 0}};
  CHECK_NOTHROW(vc.validate(e1));
}

TEST_CASE("simplex embedding of a proper coloring is a valid vector coloring") {
  Rng rng(71);
  for (int it = 0; it < 30; ++it) {
    Graph g = random_graph(7, 0.5, rng);
    ProperColoring c = greedy_coloring(g);
    VectorColoring vc = simplex_vector_coloring(c, g.n);
    CHECK_NOTHROW(vc.validate(g));
  }
}

TEST_CASE("matching size on the named examples") {
  Rng rng(73);
  CHECK(matching_size(complete_graph(3), rng) == 1);
  Graph isolated = Graph::from_edges(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  CHECK(matching_size(isolated, rng) == 4);
  Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(matching_size(star, rng) == 1);
}

TEST_CASE("matching size equals brute force with zero overestimates") {
  Rng rng(79);
  for (int it = 0; it < 200; ++it) {
    Graph g = random_graph(2 + static_cast<int>(rng.next_below(7)), 0.45, rng);
    int want = oracle::brute_matching(g);
    int got = matching_size(g, rng);
    CHECK(got <= want);
    CHECK(got == want);  // failure probability ~ n / 2^64
  }
}

TEST_CASE("induced subgraph keeps structure and mapping") {
  Graph c5 = cycle_graph(5);
  auto full = induced_subgraph(c5, {0, 1, 2, 3, 4});
  CHECK(full.graph.edges == c5.edges);
  auto none = induced_subgraph(c5, {});
  CHECK(none.graph.n == 0);
  auto p4 = induced_subgraph(c5, {1, 2, 3, 4});  // drop vertex 0
  CHECK(p4.graph.n == 4);
  CHECK(p4.graph.edge_count() == 3);
  CHECK(p4.orig == std::vector<int>{1, 2, 3, 4});
  CHECK_THROWS_AS(induced_subgraph(c5, {0, 7}), std::invalid_argument);
}
