#ifndef TREESIEVE_GRAPH_HPP_
#define TREESIEVE_GRAPH_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treesieve/rng.hpp"

namespace treesieve {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* Undirected simple graph. Vertices are 1-based in files and 0-based in
   memory; the parsers and serializers are the only translation layer.
   Adjacency lists are strictly increasing, which the sieve DP relies on. */
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;        // sorted ascending, symmetric
  std::vector<std::pair<int, int>> edges;   // u < v, sorted lexicographically
  std::vector<int64_t> weights;             // empty, or per-vertex >= 1

  static Graph from_edges(int n, std::vector<std::pair<int, int>> edge_list);

  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int max_degree() const;
  bool has_weights() const { return !weights.empty(); }
  int64_t weight(int v) const { return has_weights() ? weights[v] : 1; }

  bool has_edge(int u, int v) const;
  // Index into `edges` of {u,v}; -1 if absent.
  int edge_index(int u, int v) const;

  bool is_connected() const;
  // Vertex triples a<b<c forming triangles, lexicographically sorted.
  std::vector<std::array<int, 3>> triangles() const;
};

// Accepts the edge-list format (optional leading vertex-count line, "u v"
// edge lines, "w u c" weight lines, '#' comments) and DIMACS ("c"/"p edge
// n m"/"e u v"). Input is normalized: duplicates merged, loops rejected.
// Errors carry 1-based line numbers.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);

// Edge-list form that parse_graph maps back to the same graph.
std::string serialize_graph(const Graph& g);

struct Bipartition {
  std::vector<uint8_t> side;  // 1 or 2 per vertex

  int n() const { return static_cast<int>(side.size()); }
  bool in_v1(int v) const { return side[v] == 1; }
  bool in_v2(int v) const { return side[v] == 2; }

  static Bipartition all_v1(int n) { return Bipartition{std::vector<uint8_t>(n, 1)}; }
  static Bipartition all_v2(int n) { return Bipartition{std::vector<uint8_t>(n, 2)}; }
  // Each vertex to V1 independently with probability 1/2.
  static Bipartition uniform_random(int n, Rng& rng);
};

Bipartition load_bipartition(const std::string& path, int n);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> orig;  // new id -> original id
};

// Subgraph on `s` (0-based ids) with contiguous relabeling. Weights carry
// over. Throws on out-of-range or duplicate ids.
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s);

}  // namespace treesieve

#endif  // TREESIEVE_GRAPH_HPP_
