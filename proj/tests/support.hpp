#ifndef TREESIEVE_TESTS_SUPPORT_HPP_
#define TREESIEVE_TESTS_SUPPORT_HPP_

#include <utility>
#include <vector>

#include "treesieve/graph.hpp"
#include "treesieve/rng.hpp"

namespace tsupport {

inline treesieve::Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return treesieve::Graph::from_edges(n, std::move(e));
}

inline treesieve::Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return treesieve::Graph::from_edges(n, std::move(e));
}

inline treesieve::Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return treesieve::Graph::from_edges(n, std::move(e));
}

// center 0, leaves 1..t
inline treesieve::Graph star_graph(int t) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= t; ++i) e.emplace_back(0, i);
  return treesieve::Graph::from_edges(t + 1, std::move(e));
}

inline treesieve::Graph petersen() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);      // outer cycle
    e.emplace_back(i, i + 5);            // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return treesieve::Graph::from_edges(10, std::move(e));
}

inline treesieve::Graph random_graph(int n, double p, treesieve::Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_bernoulli(p)) edges.emplace_back(u, v);
  return treesieve::Graph::from_edges(n, std::move(edges));
}

inline treesieve::Graph random_connected_graph(int n, double p, treesieve::Rng& rng) {
  for (;;) {
    treesieve::Graph g = random_graph(n, p, rng);
    if (g.is_connected()) return g;
  }
}

inline treesieve::Graph random_subcubic_graph(int n, treesieve::Rng& rng) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  for (int i = static_cast<int>(all.size()) - 1; i > 0; --i)
    std::swap(all[i], all[rng.next_below(static_cast<uint64_t>(i) + 1)]);
  std::vector<int> deg(n, 0);
  std::vector<std::pair<int, int>> chosen;
  for (auto [u, v] : all) {
    if (deg[u] >= 3 || deg[v] >= 3) continue;
    if (rng.next_bernoulli(0.75)) {
      chosen.emplace_back(u, v);
      ++deg[u];
      ++deg[v];
    }
  }
  return treesieve::Graph::from_edges(n, std::move(chosen));
}

// random labeled tree on k vertices via a Pruefer sequence
inline treesieve::Graph random_tree(int k, treesieve::Rng& rng) {
  if (k == 1) return treesieve::Graph::from_edges(1, {});
  if (k == 2) return treesieve::Graph::from_edges(2, {{0, 1}});
  std::vector<int> pruefer(k - 2);
  for (auto& x : pruefer) x = static_cast<int>(rng.next_below(static_cast<uint64_t>(k)));
  std::vector<int> deg(k, 1);
  for (int x : pruefer) ++deg[x];
  std::vector<std::pair<int, int>> edges;
  std::vector<bool> used(k, false);
  for (int x : pruefer) {
    for (int leaf = 0; leaf < k; ++leaf) {
      if (deg[leaf] == 1 && !used[leaf]) {
        edges.emplace_back(leaf, x);
        used[leaf] = true;
        --deg[x];
        break;
      }
    }
  }
  int a = -1, b = -1;
  for (int v = 0; v < k; ++v) {
    if (deg[v] == 1 && !used[v]) {
      if (a < 0) a = v;
      else b = v;
    }
  }
  edges.emplace_back(a, b);
  return treesieve::Graph::from_edges(k, std::move(edges));
}

}  // namespace tsupport

#endif  // TREESIEVE_TESTS_SUPPORT_HPP_
