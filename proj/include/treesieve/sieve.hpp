#ifndef TREESIEVE_SIEVE_HPP_
#define TREESIEVE_SIEVE_HPP_

#include <cstdint>
#include <vector>

#include "treesieve/gf64.hpp"
#include "treesieve/graph.hpp"

namespace treesieve {

/* One evaluation task: decide whether the host graph, under the fixed
   bipartition, contains a k-vertex tree with exactly l leaves whose
   labellable set fits into r labels. */
struct SieveInstance {
  const Graph* g;
  Bipartition part;
  int k, l, r;

  // k >= 3 (smaller k is combinatorial and handled upstream),
  // 2 <= l <= k-1, l <= r <= 2k-1.
  SieveInstance(const Graph& graph, Bipartition p, int k_nodes, int l_leaves, int label_budget);
};

/* Sampled values for every indeterminate: x per edge, y per (vertex or
   edge, label), z per vertex. vertex_factor carries eta^w(v) in the
   weighted variant and is empty otherwise. */
struct EvaluationPoint {
  int r = 0;
  std::vector<Gf64> x;              // per edge
  std::vector<Gf64> y;              // (n + m) * r, element-major
  std::vector<Gf64> z;              // per vertex
  std::vector<Gf64> vertex_factor;  // empty, or per-vertex multiplier

  static EvaluationPoint sample(const Graph& g, int r, Rng& rng);

  Gf64 y_vertex(int v, int t) const { return y[static_cast<size_t>(v) * r + t]; }
  Gf64 y_edge(const Graph& g, int e, int t) const {
    return y[static_cast<size_t>(g.n + e) * r + t];
  }
};

/* Sum of y_{q,t} over t in the current label subset, for every vertex and
   edge q. toggle() updates all sums in O(n+m), which the Gray-code subset
   walk relies on. */
class LabelSums {
 public:
  LabelSums(const Graph& g, const EvaluationPoint& pt);

  void clear();
  void toggle(int t);  // 0-based label
  void set_labels(const std::vector<int>& labels);  // 1-based labels

  uint64_t mask() const { return mask_; }
  Gf64 vertex(int v) const { return sums_[v]; }
  Gf64 edge(int e) const { return sums_[n_ + e]; }

 private:
  const EvaluationPoint* pt_;
  int n_, r_;
  std::vector<Gf64> sums_;  // n + m entries
  uint64_t mask_ = 0;
};

/* Evaluates the per-subset polynomials P_i^X by the suffix dynamic
   program, with two deviations from the plain recurrence: tables carry
   the root's parent vertex so children never map back onto it, and roots
   with exactly one child are cancelled out so every counted walk has an
   internal root. */
class SieveEngine {
 public:
  SieveEngine(const SieveInstance& inst, const EvaluationPoint& pt);

  // out[i] = P_i^X at the point, i = 0..r, X given by the label sums.
  void eval_subset(const LabelSums& ls, Gf64* out);

  size_t workspace_bytes() const { return w_.capacity() * sizeof(Gf64); }

 private:
  const SieveInstance* inst_;
  const EvaluationPoint* pt_;
  const Graph* g_;
  int k_, l_, r_;
  bool weighted_;

  std::vector<size_t> voff_;     // vertex -> offset into w_
  std::vector<int> dir_off_;     // vertex -> offset into directed-edge arrays
  std::vector<int> rev_slot_;    // (a,jj) -> 1 + position of a in adj[b]
  std::vector<int> dir_edge_;    // (a,jj) -> edge index of {a, adj[a][jj]}
  std::vector<uint8_t> dir_d22_; // (a,jj) -> both endpoints in V2
  std::vector<Gf64> w_;          // DP table
  std::vector<Gf64> f0_, f1_;    // per directed edge, for the current subset
  std::vector<Gf64> conv_;       // (l+1)*(r+1) scratch slab

  Gf64 vfac(int v) const {
    return weighted_ ? pt_->vertex_factor[v] : Gf64::one();
  }
  size_t slab(int a, int p, int jj, int kk) const;
  void run_dp();
};

// P_i^X for i = 0..r at one point, for one explicit subset (1-based
// labels). Convenience wrapper used by tests and oracles.
std::vector<Gf64> dp_evaluate(const SieveInstance& inst, const EvaluationPoint& pt,
                              const std::vector<int>& labels);

// Value of the full sieve polynomial at the point: Gray-code walk over
// the nonempty subsets of [r], each P_i^X accumulated for the indices i
// with X inside [i]. Nonzero certifies a witness tree.
Gf64 evaluate_P(const SieveInstance& inst, const EvaluationPoint& pt, int threads = 1);

// Weighted variant: returns the coefficients R_0..R_D of eta, where
// D bounds the weight of any k-vertex witness. The caller inspects
// indices >= weight_cap. Requires vertex weights on the instance graph.
std::vector<Gf64> evaluate_weighted(const SieveInstance& inst, const EvaluationPoint& base,
                                    int64_t weight_cap, int threads = 1);

// Largest possible total weight of k distinct vertices (interpolation
// degree bound for the weighted sieve).
int64_t max_simple_weight(const Graph& g, int k);

// Coefficients of the unique degree-<n polynomial through (xs[j], ys[j]).
std::vector<Gf64> lagrange_interpolate(const std::vector<Gf64>& xs, const std::vector<Gf64>& ys);
Gf64 poly_eval(const std::vector<Gf64>& coeffs, Gf64 x);

inline uint64_t gray_code(uint64_t s) { return s ^ (s >> 1); }

}  // namespace treesieve

#endif  // TREESIEVE_SIEVE_HPP_
