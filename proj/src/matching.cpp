#include "treesieve/matching.hpp"

#include <vector>

#include "treesieve/gf64.hpp"

namespace treesieve {

int matching_size(const Graph& g, Rng& rng) {
  int n = g.n;
  if (n == 0 || g.edges.empty()) return 0;
  // Alternating matrix: same random value at (u,v) and (v,u), zero diagonal
  // (in characteristic two -x = x). Its rank is even.
  std::vector<Gf64> m(static_cast<size_t>(n) * n, Gf64::zero());
  for (auto [u, v] : g.edges) {
    Gf64 val = Gf64::sample(rng);
    m[static_cast<size_t>(u) * n + v] = val;
    m[static_cast<size_t>(v) * n + u] = val;
  }
  // Gaussian elimination
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int row = rank; row < n; ++row)
      if (!m[static_cast<size_t>(row) * n + col].is_zero()) { pivot = row; break; }
    if (pivot < 0) continue;
    for (int j = 0; j < n; ++j)
      std::swap(m[static_cast<size_t>(pivot) * n + j], m[static_cast<size_t>(rank) * n + j]);
    Gf64 inv = m[static_cast<size_t>(rank) * n + col].inverse();
    for (int row = rank + 1; row < n; ++row) {
      Gf64 factor = m[static_cast<size_t>(row) * n + col];
      if (factor.is_zero()) continue;
      factor *= inv;
      for (int j = col; j < n; ++j)
        m[static_cast<size_t>(row) * n + j] += factor * m[static_cast<size_t>(rank) * n + j];
    }
    ++rank;
  }
  return rank / 2;
}

}  // namespace treesieve
