#ifndef TREESIEVE_TESTS_ACCEPTANCE_SUITE_HPP_
#define TREESIEVE_TESTS_ACCEPTANCE_SUITE_HPP_

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "treesieve/graph.hpp"

namespace tsuite {

// Connected graphs on exactly n labeled vertices, one per isomorphism
// class. Walks edge masks in increasing order; the first mask of each
// class is its minimal representative, and inserting the whole orbit
// into the covered set retires the class.
inline std::vector<treesieve::Graph> connected_graphs_upto_iso(int n) {
  using treesieve::Graph;
  std::vector<Graph> out;
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(Graph::from_edges(1, {}));
    return out;
  }
  const int m = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> edge_of(m);
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  {
    int e = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        edge_of[e] = {i, j};
        idx[i][j] = idx[j][i] = e;
        ++e;
      }
  }
  // edge remap table per permutation
  std::vector<std::array<int, 21>> remap;
  {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::array<int, 21> r{};
      for (int e = 0; e < m; ++e) r[e] = idx[perm[edge_of[e].first]][perm[edge_of[e].second]];
      remap.push_back(r);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  auto connected = [&](uint32_t mask) {
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
      while (uf[x] != x) x = uf[x] = uf[uf[x]];
      return x;
    };
    int comps = n;
    for (int e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      int a = find(edge_of[e].first), b = find(edge_of[e].second);
      if (a != b) {
        uf[a] = b;
        --comps;
      }
    }
    return comps == 1;
  };
  std::unordered_set<uint32_t> covered;
  covered.reserve(1u << std::min(m, 21));
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (covered.count(mask)) continue;
    if (!connected(mask)) continue;
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1) edges.push_back(edge_of[e]);
    out.push_back(Graph::from_edges(n, edges));
    for (const auto& r : remap) {
      uint32_t image = 0;
      for (int e = 0; e < m; ++e)
        if (mask >> e & 1) image |= 1u << r[e];
      covered.insert(image);
    }
  }
  return out;
}

}  // namespace tsuite

#endif  // TREESIEVE_TESTS_ACCEPTANCE_SUITE_HPP_
