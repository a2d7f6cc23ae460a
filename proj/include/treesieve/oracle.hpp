#ifndef TREESIEVE_ORACLE_HPP_
#define TREESIEVE_ORACLE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "treesieve/gf64.hpp"
#include "treesieve/graph.hpp"
#include "treesieve/sieve.hpp"

namespace treesieve::oracle {

/* Exhaustive reference routines. Exponential by design; every entry point
   guards its input size and refuses rather than truncating. */

struct RootedWalk {
  std::vector<int> parent;       // parent[0] = -1; nodes are in proper order
  std::vector<int> image;        // node -> vertex of the host graph
  std::vector<int> child_count;  // per node
  bool simple = false;           // image injective
  int leaves = 0;                // childless nodes
  int la_size = 0;
  std::vector<int> la_rows;      // y-row per labellable element (vertex v -> v, edge e -> n+e)

  int k() const { return static_cast<int>(parent.size()); }
  int root_children() const { return child_count[0]; }
};

// Every admissible (k,l)-fixed properly ordered branching walk whose root
// has at least two children, each exactly once. Guards: k <= 5, n <= 6.
std::vector<RootedWalk> enumerate_admissible_walks(const Graph& g, const Bipartition& part,
                                                   int k, int l);
// Same, restricted to |la(B)| = i.
std::vector<RootedWalk> enumerate_admissible_walks(const Graph& g, const Bipartition& part,
                                                   int k, int l, int i);

// z * prod of edge x-values (and eta vertex factors when present).
Gf64 walk_base_value(const Graph& g, const RootedWalk& w, const EvaluationPoint& pt);
// Sum over bijective labelings la(B) -> [|la(B)|] of the y-product.
Gf64 walk_bijective_label_sum(const RootedWalk& w, const EvaluationPoint& pt);
// Sum over all labelings la(B) -> X of the y-product (1-based labels).
Gf64 walk_subset_label_sum(const RootedWalk& w, const EvaluationPoint& pt,
                           const std::vector<int>& labels);

// P_i per i = 0..r by direct summation over walks and bijections.
std::vector<Gf64> brute_poly_eval(const Graph& g, const Bipartition& part, int k, int l, int r,
                                  const EvaluationPoint& pt);
// Same partial sum restricted to the non-simple walks (the cancellation
// property says this is identically zero).
std::vector<Gf64> brute_poly_eval_nonsimple(const Graph& g, const Bipartition& part, int k, int l,
                                            int r, const EvaluationPoint& pt);
// P_i^X per i by direct summation over walks and unrestricted labelings.
std::vector<Gf64> brute_poly_eval_subset(const Graph& g, const Bipartition& part, int k, int l,
                                         int r, const EvaluationPoint& pt,
                                         const std::vector<int>& labels);

struct LabellableSet {
  std::vector<int> leaves;
  std::vector<int> internal_v1;
  std::vector<std::pair<int, int>> v22_edges;
  int size() const {
    return static_cast<int>(leaves.size() + internal_v1.size() + v22_edges.size());
  }
};

// la of a subtree given by its edges (vertices inferred); throws if the
// edge set is not a tree.
LabellableSet labellable_set(const std::vector<std::pair<int, int>>& tree_edges,
                             const Bipartition& part);

struct Subtree {
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;
};

// All k-vertex subtrees of g with exactly l leaves. Guard: C(n,k) <= 1e7.
std::vector<Subtree> enumerate_subtrees(const Graph& g, int k, int l);

// Decision plus one witness.
std::optional<Subtree> brute_tree(const Graph& g, int k, int l);

bool brute_kpath(const Graph& g, int k);                      // n <= 20
bool brute_weighted_path(const Graph& g, int64_t min_weight,
                         int max_vertices);                   // n <= 16
int brute_matching(const Graph& g);                           // n <= 22
int max_internal_spanning_tree(const Graph& g);               // n <= 9
bool brute_kist(const Graph& g, int k);

}  // namespace treesieve::oracle

#endif  // TREESIEVE_ORACLE_HPP_
