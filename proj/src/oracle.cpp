#include "treesieve/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace treesieve::oracle {

namespace {

struct WalkBuilder {
  const Graph* g;
  const Bipartition* part;
  int k;
  std::vector<int> parent, image;
  std::vector<std::vector<int>> children;
  std::vector<RootedWalk>* out;

  void finish() {
    RootedWalk w;
    w.parent = parent;
    w.image = image;
    w.child_count.resize(k);
    for (int u = 0; u < k; ++u) w.child_count[u] = static_cast<int>(children[u].size());
    auto seen = image;
    std::sort(seen.begin(), seen.end());
    w.simple = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
    for (int u = 0; u < k; ++u) {
      const bool leaf = w.child_count[u] == 0;
      if (leaf) {
        ++w.leaves;
        w.la_rows.push_back(image[u]);
      } else if (part->in_v1(image[u])) {
        w.la_rows.push_back(image[u]);
      }
      if (u > 0 && part->in_v2(image[u]) && part->in_v2(image[parent[u]])) {
        int e = g->edge_index(image[parent[u]], image[u]);
        w.la_rows.push_back(g->n + e);
      }
    }
    w.la_size = static_cast<int>(w.la_rows.size());
    out->push_back(std::move(w));
  }

  // Expand node u; `assigned` nodes exist so far.
  void expand(int u, int assigned) {
    if (u == assigned) {
      if (assigned == k) finish();
      return;
    }
    std::vector<int> allowed;
    const int pv = parent[u] >= 0 ? image[parent[u]] : -1;
    for (int w : g->adj[image[u]])
      if (w != pv) allowed.push_back(w);  // U-turn-free
    const int max_take = k - assigned;
    const int asz = static_cast<int>(allowed.size());
    for (uint32_t mask = 0; mask < (1u << asz); ++mask) {
      const int take = std::popcount(mask);
      if (take > max_take) continue;
      // children in increasing image order keep the walk properly ordered
      int id = assigned;
      for (int b = 0; b < asz; ++b) {
        if (!(mask >> b & 1)) continue;
        parent[id] = u;
        image[id] = allowed[b];
        children[u].push_back(id);
        ++id;
      }
      expand(u + 1, id);
      children[u].clear();
    }
  }
};

void check_walk_guards(const Graph& g, int k) {
  if (k > 5 || g.n > 6)
    throw std::invalid_argument("walk enumeration guard exceeded (k <= 5, n <= 6)");
  if (k < 1) throw std::invalid_argument("k must be positive");
}

}  // namespace

std::vector<RootedWalk> enumerate_admissible_walks(const Graph& g, const Bipartition& part,
                                                   int k, int l) {
  check_walk_guards(g, k);
  std::vector<RootedWalk> all;
  WalkBuilder wb;
  wb.g = &g;
  wb.part = &part;
  wb.k = k;
  wb.parent.assign(k, -1);
  wb.image.assign(k, -1);
  wb.children.assign(k, {});
  wb.out = &all;
  for (int v = 0; v < g.n; ++v) {
    wb.image[0] = v;
    wb.expand(0, 1);
  }
  std::vector<RootedWalk> picked;
  for (auto& w : all)
    if (w.leaves == l && w.root_children() >= 2) picked.push_back(std::move(w));
  return picked;
}

std::vector<RootedWalk> enumerate_admissible_walks(const Graph& g, const Bipartition& part,
                                                   int k, int l, int i) {
  auto walks = enumerate_admissible_walks(g, part, k, l);
  std::vector<RootedWalk> picked;
  for (auto& w : walks)
    if (w.la_size == i) picked.push_back(std::move(w));
  return picked;
}

Gf64 walk_base_value(const Graph& g, const RootedWalk& w, const EvaluationPoint& pt) {
  Gf64 val = pt.z[w.image[0]];
  for (int u = 1; u < w.k(); ++u) {
    int e = g.edge_index(w.image[w.parent[u]], w.image[u]);
    val *= pt.x[e];
  }
  if (!pt.vertex_factor.empty())
    for (int u = 0; u < w.k(); ++u) val *= pt.vertex_factor[w.image[u]];
  return val;
}

Gf64 walk_bijective_label_sum(const RootedWalk& w, const EvaluationPoint& pt) {
  const int s = w.la_size;
  if (s == 0) return Gf64::one();
  if (s > pt.r) return Gf64::zero();  // no injection into [r]
  std::vector<int> labels(s);
  std::iota(labels.begin(), labels.end(), 0);
  Gf64 acc = Gf64::zero();
  do {
    Gf64 term = Gf64::one();
    for (int j = 0; j < s; ++j)
      term *= pt.y[static_cast<size_t>(w.la_rows[j]) * pt.r + labels[j]];
    acc += term;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return acc;
}

Gf64 walk_subset_label_sum(const RootedWalk& w, const EvaluationPoint& pt,
                           const std::vector<int>& labels) {
  const int s = w.la_size;
  if (s == 0) return Gf64::one();
  if (labels.empty()) return Gf64::zero();
  double count = 1;
  for (int j = 0; j < s; ++j) count *= static_cast<double>(labels.size());
  if (count > 2e7) throw std::invalid_argument("subset label enumeration too large");
  std::vector<int> pick(s, 0);
  Gf64 acc = Gf64::zero();
  for (;;) {
    Gf64 term = Gf64::one();
    for (int j = 0; j < s; ++j)
      term *= pt.y[static_cast<size_t>(w.la_rows[j]) * pt.r + (labels[pick[j]] - 1)];
    acc += term;
    int j = 0;
    while (j < s && ++pick[j] == static_cast<int>(labels.size())) pick[j++] = 0;
    if (j == s) break;
  }
  return acc;
}

namespace {

std::vector<Gf64> poly_eval_filtered(const Graph& g, const Bipartition& part, int k, int l, int r,
                                     const EvaluationPoint& pt, bool only_nonsimple) {
  std::vector<Gf64> acc(r + 1, Gf64::zero());
  for (const auto& w : enumerate_admissible_walks(g, part, k, l)) {
    if (only_nonsimple && w.simple) continue;
    if (w.la_size > r) continue;
    acc[w.la_size] += walk_base_value(g, w, pt) * walk_bijective_label_sum(w, pt);
  }
  return acc;
}

}  // namespace

std::vector<Gf64> brute_poly_eval(const Graph& g, const Bipartition& part, int k, int l, int r,
                                  const EvaluationPoint& pt) {
  return poly_eval_filtered(g, part, k, l, r, pt, false);
}

std::vector<Gf64> brute_poly_eval_nonsimple(const Graph& g, const Bipartition& part, int k, int l,
                                            int r, const EvaluationPoint& pt) {
  return poly_eval_filtered(g, part, k, l, r, pt, true);
}

std::vector<Gf64> brute_poly_eval_subset(const Graph& g, const Bipartition& part, int k, int l,
                                         int r, const EvaluationPoint& pt,
                                         const std::vector<int>& labels) {
  std::vector<Gf64> acc(r + 1, Gf64::zero());
  for (const auto& w : enumerate_admissible_walks(g, part, k, l)) {
    if (w.la_size > r) continue;  // matches the engine's i <= r table range
    acc[w.la_size] += walk_base_value(g, w, pt) * walk_subset_label_sum(w, pt, labels);
  }
  return acc;
}

LabellableSet labellable_set(const std::vector<std::pair<int, int>>& tree_edges,
                             const Bipartition& part) {
  if (tree_edges.empty()) throw std::invalid_argument("labellable_set: empty tree");
  std::vector<int> verts;
  for (auto [u, v] : tree_edges) {
    verts.push_back(u);
    verts.push_back(v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.size() != tree_edges.size() + 1)
    throw std::invalid_argument("labellable_set: edge set is not a tree");
  // acyclic + connected check via union-find
  std::vector<int> uf(part.n());
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (auto [u, v] : tree_edges) {
    int ru = find(u), rv = find(v);
    if (ru == rv) throw std::invalid_argument("labellable_set: edge set has a cycle");
    uf[ru] = rv;
  }
  std::vector<int> deg(part.n(), 0);
  for (auto [u, v] : tree_edges) {
    ++deg[u];
    ++deg[v];
  }
  LabellableSet out;
  for (int v : verts) {
    if (deg[v] <= 1) out.leaves.push_back(v);
    else if (part.in_v1(v)) out.internal_v1.push_back(v);
  }
  for (auto [u, v] : tree_edges)
    if (part.in_v2(u) && part.in_v2(v)) out.v22_edges.emplace_back(u, v);
  return out;
}

namespace {

int64_t choose64(int n, int k) {
  if (k < 0 || k > n) return 0;
  __int128 num = 1;
  for (int i = 0; i < k; ++i) {
    num = num * (n - i) / (i + 1);
    if (num > (static_cast<__int128>(1) << 62)) return 1ll << 62;
  }
  return static_cast<int64_t>(num);
}

// Spanning trees of the induced subgraph on `verts`, invoking fn(edges)
// per tree; returns false if fn requested a stop.
bool for_each_spanning_tree(const Graph& g, const std::vector<int>& verts,
                            const std::function<bool(const std::vector<std::pair<int, int>>&)>& fn) {
  const int k = static_cast<int>(verts.size());
  std::vector<std::pair<int, int>> cand;
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j)
      if (g.has_edge(verts[i], verts[j])) cand.emplace_back(verts[i], verts[j]);
  if (static_cast<int>(cand.size()) < k - 1) return true;

  std::vector<std::pair<int, int>> chosen;
  std::vector<int> uf(g.n);
  // no path compression: unions must roll back exactly
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x];
    return x;
  };
  std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
    if (static_cast<int>(chosen.size()) == k - 1) return fn(chosen);
    if (idx >= cand.size()) return true;
    if (cand.size() - idx < (k - 1) - chosen.size()) return true;
    auto [u, v] = cand[idx];
    int ru = find(u), rv = find(v);
    if (ru != rv) {
      uf[ru] = rv;
      chosen.push_back(cand[idx]);
      if (!rec(idx + 1)) return false;
      chosen.pop_back();
      uf[ru] = ru;
    }
    return rec(idx + 1);
  };
  for (int v : verts) uf[v] = v;
  return rec(0);
}

}  // namespace

std::vector<Subtree> enumerate_subtrees(const Graph& g, int k, int l) {
  if (choose64(g.n, k) > 10'000'000)
    throw std::invalid_argument("subtree enumeration guard exceeded");
  std::vector<Subtree> out;
  if (k < 2) {
    if (k == 1 && l == 0)
      for (int v = 0; v < g.n; ++v) out.push_back({{v}, {}});
    return out;
  }
  if (k > g.n) return out;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    for_each_spanning_tree(g, pick, [&](const std::vector<std::pair<int, int>>& edges) {
      std::vector<int> deg(g.n, 0);
      for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
      }
      int leaves = 0;
      for (int v : pick)
        if (deg[v] == 1) ++leaves;
      if (leaves == l) out.push_back({pick, edges});
      return true;
    });
    // next combination
    int i = k - 1;
    while (i >= 0 && pick[i] == g.n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::optional<Subtree> brute_tree(const Graph& g, int k, int l) {
  if (k == 1) {
    if (l == 0 && g.n >= 1) return Subtree{{0}, {}};
    return std::nullopt;
  }
  if (k == 2) {
    if (l == 2 && !g.edges.empty()) {
      auto [u, v] = g.edges[0];
      return Subtree{{u, v}, {{u, v}}};
    }
    return std::nullopt;
  }
  if (choose64(g.n, k) > 10'000'000)
    throw std::invalid_argument("brute_tree guard exceeded");
  if (k > g.n || l < 2 || l > k - 1) return std::nullopt;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::optional<Subtree> found;
  for (;;) {
    for_each_spanning_tree(g, pick, [&](const std::vector<std::pair<int, int>>& edges) {
      std::vector<int> deg(g.n, 0);
      for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
      }
      int leaves = 0;
      for (int v : pick)
        if (deg[v] == 1) ++leaves;
      if (leaves == l) {
        found = Subtree{pick, edges};
        return false;
      }
      return true;
    });
    if (found) return found;
    int i = k - 1;
    while (i >= 0 && pick[i] == g.n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return std::nullopt;
}

bool brute_kpath(const Graph& g, int k) {
  if (g.n > 20) throw std::invalid_argument("brute_kpath guard exceeded (n <= 20)");
  if (k <= 0) return true;
  if (k == 1) return g.n >= 1;
  if (k > g.n) return false;
  const int n = g.n;
  // reach[mask] = set of possible endpoints of a simple path on `mask`
  std::vector<uint32_t> reach(1u << n, 0);
  for (int v = 0; v < n; ++v) reach[1u << v] = 1u << v;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (!reach[mask]) continue;
    if (std::popcount(mask) == k) return true;
    if (std::popcount(mask) > k) continue;
    for (int last = 0; last < n; ++last) {
      if (!(reach[mask] >> last & 1)) continue;
      for (int w : g.adj[last])
        if (!(mask >> w & 1)) reach[mask | (1u << w)] |= 1u << w;
    }
  }
  return false;
}

bool brute_weighted_path(const Graph& g, int64_t min_weight, int max_vertices) {
  if (g.n > 16) throw std::invalid_argument("brute_weighted_path guard exceeded (n <= 16)");
  if (max_vertices <= 0) return min_weight <= 0;
  const int n = g.n;
  std::vector<std::vector<int64_t>> bw(1u << n);
  // bw[mask][last] = max weight of a simple path covering mask ending at last
  for (uint32_t mask = 1; mask < (1u << n); ++mask) bw[mask].assign(n, -1);
  for (int v = 0; v < n; ++v) bw[1u << v][v] = g.weight(v);
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int used = std::popcount(mask);
    for (int last = 0; last < n; ++last) {
      const int64_t cur = bw[mask][last];
      if (cur < 0) continue;
      if (used <= max_vertices && cur >= min_weight) return true;
      if (used >= max_vertices) continue;
      for (int w : g.adj[last]) {
        if (mask >> w & 1) continue;
        auto& slot = bw[mask | (1u << w)][w];
        slot = std::max(slot, cur + g.weight(w));
      }
    }
  }
  return false;
}

int brute_matching(const Graph& g) {
  if (g.n > 22) throw std::invalid_argument("brute_matching guard exceeded (n <= 22)");
  const int n = g.n;
  std::vector<int8_t> memo(static_cast<size_t>(1) << n, -1);
  std::function<int(uint32_t)> rec = [&](uint32_t mask) -> int {
    if (!mask) return 0;
    int8_t& m = memo[mask];
    if (m >= 0) return m;
    const int v = std::countr_zero(mask);
    int best = rec(mask & ~(1u << v));
    for (int w : g.adj[v])
      if (mask >> w & 1) best = std::max(best, 1 + rec(mask & ~(1u << v) & ~(1u << w)));
    m = static_cast<int8_t>(best);
    return best;
  };
  return rec((n == 32 ? ~0u : (1u << n) - 1));
}

int max_internal_spanning_tree(const Graph& g) {
  if (g.n > 9) throw std::invalid_argument("spanning tree enumeration guard exceeded (n <= 9)");
  if (g.n <= 2) return 0;
  if (!g.is_connected()) return -1;
  std::vector<int> all(g.n);
  std::iota(all.begin(), all.end(), 0);
  int best = -1;
  for_each_spanning_tree(g, all, [&](const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> deg(g.n, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    int internal = 0;
    for (int v = 0; v < g.n; ++v)
      if (deg[v] >= 2) ++internal;
    best = std::max(best, internal);
    return true;
  });
  return best;
}

bool brute_kist(const Graph& g, int k) {
  if (k <= 0) return g.n >= 1 && g.is_connected();
  if (!g.is_connected() || g.n < 2) return false;
  return max_internal_spanning_tree(g) >= k;
}

}  // namespace treesieve::oracle
