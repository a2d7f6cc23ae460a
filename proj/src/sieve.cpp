#include "treesieve/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace treesieve {

SieveInstance::SieveInstance(const Graph& graph, Bipartition p, int k_nodes, int l_leaves,
                             int label_budget)
    : g(&graph), part(std::move(p)), k(k_nodes), l(l_leaves), r(label_budget) {
  if (k < 3) throw std::invalid_argument("sieve requires k >= 3");
  if (l < 2 || l > k - 1) throw std::invalid_argument("need 2 <= l <= k-1");
  if (r < l || r > 2 * k - 1) throw std::invalid_argument("need l <= r <= 2k-1");
  if (part.n() != graph.n) throw std::invalid_argument("bipartition does not match graph");
  if (graph.has_weights())
    for (int64_t w : graph.weights)
      if (w < 1) throw std::invalid_argument("vertex weights must be >= 1");
}

EvaluationPoint EvaluationPoint::sample(const Graph& g, int r, Rng& rng) {
  EvaluationPoint pt;
  pt.r = r;
  pt.x.resize(g.edges.size());
  for (auto& v : pt.x) v = Gf64::sample(rng);
  pt.y.resize(static_cast<size_t>(g.n + g.edge_count()) * r);
  for (auto& v : pt.y) v = Gf64::sample(rng);
  pt.z.resize(g.n);
  for (auto& v : pt.z) v = Gf64::sample(rng);
  return pt;
}

LabelSums::LabelSums(const Graph& g, const EvaluationPoint& pt)
    : pt_(&pt), n_(g.n), r_(pt.r), sums_(g.n + g.edge_count(), Gf64::zero()) {}

void LabelSums::clear() {
  std::fill(sums_.begin(), sums_.end(), Gf64::zero());
  mask_ = 0;
}

void LabelSums::toggle(int t) {
  // addition is self-inverse, so insert and erase are the same update
  const Gf64* col = pt_->y.data() + t;
  for (size_t q = 0; q < sums_.size(); ++q) sums_[q] += col[q * r_];
  mask_ ^= 1ull << t;
}

void LabelSums::set_labels(const std::vector<int>& labels) {
  clear();
  for (int lab : labels) {
    if (lab < 1 || lab > r_) throw std::invalid_argument("label out of range 1..r");
    if (mask_ & (1ull << (lab - 1))) throw std::invalid_argument("repeated label");
    toggle(lab - 1);
  }
}

SieveEngine::SieveEngine(const SieveInstance& inst, const EvaluationPoint& pt)
    : inst_(&inst), pt_(&pt), g_(inst.g), k_(inst.k), l_(inst.l), r_(inst.r),
      weighted_(!pt.vertex_factor.empty()) {
  const Graph& g = *g_;
  if (weighted_ && static_cast<int>(pt.vertex_factor.size()) != g.n)
    throw std::invalid_argument("vertex_factor size mismatch");
  if (pt.r != r_) throw std::invalid_argument("evaluation point sampled for a different r");

  voff_.resize(g.n + 1);
  dir_off_.resize(g.n + 1);
  size_t total = 0;
  int dir_total = 0;
  const size_t cell = static_cast<size_t>(k_) * (l_ + 1) * (r_ + 1);
  for (int a = 0; a < g.n; ++a) {
    voff_[a] = total;
    dir_off_[a] = dir_total;
    size_t slots = static_cast<size_t>(g.degree(a) + 1);
    total += slots * slots * cell;
    dir_total += g.degree(a);
  }
  voff_[g.n] = total;
  dir_off_[g.n] = dir_total;
  w_.assign(total, Gf64::zero());
  conv_.assign(static_cast<size_t>(l_ + 1) * (r_ + 1), Gf64::zero());
  f0_.resize(dir_total);
  f1_.resize(dir_total);
  rev_slot_.resize(dir_total);
  dir_edge_.resize(dir_total);
  dir_d22_.resize(dir_total);
  for (int a = 0; a < g.n; ++a) {
    for (int jj = 0; jj < g.degree(a); ++jj) {
      int b = g.adj[a][jj];
      int pos = static_cast<int>(std::lower_bound(g.adj[b].begin(), g.adj[b].end(), a) -
                                 g.adj[b].begin());
      rev_slot_[dir_off_[a] + jj] = 1 + pos;
      dir_edge_[dir_off_[a] + jj] = g.edge_index(a, b);
      dir_d22_[dir_off_[a] + jj] = inst.part.in_v2(a) && inst.part.in_v2(b);
    }
  }
}

size_t SieveEngine::slab(int a, int p, int jj, int kk) const {
  const int slots = g_->degree(a) + 1;
  const size_t cell_lr = static_cast<size_t>(l_ + 1) * (r_ + 1);
  return voff_[a] +
         ((static_cast<size_t>(p) * slots + jj) * k_ + (kk - 1)) * cell_lr;
}

void SieveEngine::run_dp() {
  const Graph& g = *g_;
  const Bipartition& part = inst_->part;
  const int LL = l_ + 1, II = r_ + 1;
  const size_t slab_sz = static_cast<size_t>(LL) * II;

  for (int kk = 1; kk <= k_; ++kk) {
    for (int a = 0; a < g.n; ++a) {
      const int deg = g.degree(a);
      const int iv = part.in_v1(a) ? 1 : 0;
      for (int p = 0; p <= deg; ++p) {
        if (kk == 1) {
          // single node: zero leaves, one label iff the vertex is in V1
          for (int jj = 0; jj <= deg; ++jj) {
            Gf64* s = w_.data() + slab(a, p, jj, 1);
            std::memset(s, 0, slab_sz * sizeof(Gf64));
            s[static_cast<size_t>(0) * II + iv] = vfac(a);
          }
          continue;
        }
        // empty suffix: no walk with kk >= 2 nodes remains
        std::memset(w_.data() + slab(a, p, deg, kk), 0, slab_sz * sizeof(Gf64));
        for (int jj = deg - 1; jj >= 0; --jj) {
          Gf64* out = w_.data() + slab(a, p, jj, kk);
          const Gf64* skip = w_.data() + slab(a, p, jj + 1, kk);
          const int b = g.adj[a][jj];
          if (p >= 1 && b == g.adj[a][p - 1]) {
            // U-turn: no child of a may map onto a's parent
            std::memcpy(out, skip, slab_sz * sizeof(Gf64));
            continue;
          }
          const int de = dir_off_[a] + jj;
          const int d22 = dir_d22_[de];
          const Gf64 f0 = f0_[de];
          const Gf64 f1v = f1_[de] * vfac(b);

          // three-way convolution with the child's subtree
          std::memset(conv_.data(), 0, slab_sz * sizeof(Gf64));
          for (int k1 = 1; k1 <= kk - 1; ++k1) {
            const int k2 = kk - k1;
            const Gf64* u = w_.data() + slab(a, p, jj + 1, k1);
            const Gf64* c = w_.data() + slab(b, rev_slot_[de], 0, k2);
            for (int l1 = 0; l1 < LL; ++l1) {
              const int l2max = l_ - l1;
              if (l2max < 1) break;
              for (int i1 = 0; i1 + d22 + 1 <= r_; ++i1) {
                const Gf64 uv = u[static_cast<size_t>(l1) * II + i1];
                if (uv.is_zero()) continue;
                const int i2max = r_ - i1 - d22;
                for (int l2 = 1; l2 <= l2max; ++l2) {
                  const Gf64* crow = c + static_cast<size_t>(l2) * II;
                  Gf64* trow = conv_.data() + static_cast<size_t>(l1 + l2) * II + i1 + d22;
                  for (int i2 = 1; i2 <= i2max; ++i2) {
                    if (!crow[i2].is_zero()) trow[i2] += uv * crow[i2];
                  }
                }
              }
            }
          }

          const Gf64* leaf_src = w_.data() + slab(a, p, jj + 1, kk - 1);
          for (int ll = 0; ll < LL; ++ll) {
            for (int ii = 0; ii < II; ++ii) {
              Gf64 v = skip[static_cast<size_t>(ll) * II + ii];
              const int li = ii - 1 - d22;
              if (ll >= 1 && li >= 0) {
                const Gf64 ls = leaf_src[static_cast<size_t>(ll - 1) * II + li];
                if (!ls.is_zero()) v += f1v * ls;
              }
              const Gf64 cv = conv_[static_cast<size_t>(ll) * II + ii];
              if (!cv.is_zero()) v += f0 * cv;
              out[static_cast<size_t>(ll) * II + ii] = v;
            }
          }
        }
      }
    }
  }
}

void SieveEngine::eval_subset(const LabelSums& ls, Gf64* out) {
  const Graph& g = *g_;
  const Bipartition& part = inst_->part;
  const int II = r_ + 1;

  for (int a = 0; a < g.n; ++a) {
    const bool a2 = part.in_v2(a);
    for (int jj = 0; jj < g.degree(a); ++jj) {
      const int de = dir_off_[a] + jj;
      const int b = g.adj[a][jj];
      const Gf64 xe = pt_->x[dir_edge_[de]];
      if (a2 && part.in_v2(b)) {
        const Gf64 se = ls.edge(dir_edge_[de]);
        f0_[de] = xe * se;
        f1_[de] = f0_[de] * ls.vertex(b);
      } else if (part.in_v1(b)) {
        f0_[de] = f1_[de] = xe * ls.vertex(b);
      } else {
        f0_[de] = xe;
        f1_[de] = xe * ls.vertex(b);
      }
    }
  }

  run_dp();

  for (int i = 0; i <= r_; ++i) out[i] = Gf64::zero();
  for (int v = 0; v < g.n; ++v) {
    const int iv = part.in_v1(v) ? 1 : 0;
    const Gf64* root = w_.data() + slab(v, 0, 0, k_) + static_cast<size_t>(l_) * II;
    const Gf64 vf = vfac(v);
    Gf64 zfac = pt_->z[v];
    if (iv) zfac *= ls.vertex(v);
    for (int i = 0; i <= r_; ++i) out[i] += zfac * root[i];
    // The table also counts walks whose root has exactly one child; such
    // a root is an unrooted leaf that is neither counted in l nor
    // labelled. Adding the one-child aggregate cancels them out, so only
    // internal roots survive.
    for (int jj = 0; jj < g.degree(v); ++jj) {
      const int de = dir_off_[v] + jj;
      const int b = g.adj[v][jj];
      const int d22 = dir_d22_[de];
      const Gf64* child = w_.data() + slab(b, rev_slot_[de], 0, k_ - 1) +
                          static_cast<size_t>(l_) * II;
      for (int i = 0; i <= r_; ++i) {
        const int i2 = i - iv - d22;
        if (i2 < 1 || i2 > r_) continue;
        if (child[i2].is_zero()) continue;
        out[i] += zfac * (f0_[de] * child[i2] * vf);
      }
    }
  }
}

std::vector<Gf64> dp_evaluate(const SieveInstance& inst, const EvaluationPoint& pt,
                              const std::vector<int>& labels) {
  LabelSums ls(*inst.g, pt);
  ls.set_labels(labels);
  SieveEngine engine(inst, pt);
  std::vector<Gf64> out(inst.r + 1);
  engine.eval_subset(ls, out.data());
  return out;
}

namespace {

// Accumulates gated subset sums for Gray-code positions [lo, hi).
Gf64 sieve_range(const SieveInstance& inst, const EvaluationPoint& pt, uint64_t lo, uint64_t hi) {
  const int r = inst.r;
  LabelSums ls(*inst.g, pt);
  SieveEngine engine(inst, pt);
  std::vector<Gf64> vals(r + 1);
  uint64_t mask = gray_code(lo);
  for (int t = 0; t < r; ++t)
    if (mask & (1ull << t)) ls.toggle(t);
  Gf64 acc = Gf64::zero();
  for (uint64_t s = lo; s < hi; ++s) {
    if (s != lo) ls.toggle(std::countr_zero(s));
    if (ls.mask() == 0) continue;  // empty subset contributes nothing
    engine.eval_subset(ls, vals.data());
    // P_i is recovered from the subsets of [i] only: a map into X exists
    // inside the inclusion-exclusion for index i iff X is within [i]
    const int top = std::bit_width(ls.mask());
    for (int i = std::max(2, top); i <= r; ++i) acc += vals[i];
  }
  return acc;
}

}  // namespace

Gf64 evaluate_P(const SieveInstance& inst, const EvaluationPoint& pt, int threads) {
  if (inst.r > 30) throw std::invalid_argument("label budget too large to enumerate 2^r subsets");
  const uint64_t total = 1ull << inst.r;
  if (threads <= 1 || total < 64) return sieve_range(inst, pt, 0, total);
  const int nw = std::min<int>(threads, 16);
  std::vector<Gf64> partial(nw, Gf64::zero());
  std::vector<std::thread> pool;
  const uint64_t chunk = (total + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const uint64_t lo = std::min<uint64_t>(static_cast<uint64_t>(w) * chunk, total);
    const uint64_t hi = std::min<uint64_t>(lo + chunk, total);
    if (lo >= hi) continue;
    pool.emplace_back([&, w, lo, hi] { partial[w] = sieve_range(inst, pt, lo, hi); });
  }
  for (auto& t : pool) t.join();
  Gf64 acc = Gf64::zero();
  for (const Gf64& p : partial) acc += p;
  return acc;
}

int64_t max_simple_weight(const Graph& g, int k) {
  std::vector<int64_t> w(g.n, 1);
  if (g.has_weights()) w = g.weights;
  std::sort(w.begin(), w.end(), std::greater<>());
  int64_t sum = 0;
  for (int i = 0; i < k && i < g.n; ++i) sum += w[i];
  return sum;
}

std::vector<Gf64> evaluate_weighted(const SieveInstance& inst, const EvaluationPoint& base,
                                    int64_t weight_cap, int threads) {
  const Graph& g = *inst.g;
  if (!g.has_weights()) throw std::invalid_argument("weighted sieve needs vertex weights");
  if (weight_cap < inst.k) throw std::invalid_argument("weight_cap below k is vacuous");
  const int64_t degree = max_simple_weight(g, inst.k);
  if (degree + 1 > (1ll << 20)) throw std::invalid_argument("eta degree too large");
  const int points = static_cast<int>(degree) + 1;

  std::vector<Gf64> xs(points), ys(points);
  EvaluationPoint pt = base;
  pt.vertex_factor.resize(g.n);
  for (int j = 0; j < points; ++j) {
    const Gf64 eta(static_cast<uint64_t>(j));
    xs[j] = eta;
    for (int v = 0; v < g.n; ++v)
      pt.vertex_factor[v] = eta.pow(static_cast<uint64_t>(g.weights[v]));
    ys[j] = evaluate_P(inst, pt, threads);
  }
  return lagrange_interpolate(xs, ys);
}

std::vector<Gf64> lagrange_interpolate(const std::vector<Gf64>& xs, const std::vector<Gf64>& ys) {
  const size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("bad interpolation input");
  // master polynomial M(X) = prod (X - x_j); subtraction is addition here
  std::vector<Gf64> master(n + 1, Gf64::zero());
  master[0] = Gf64::one();
  for (size_t j = 0; j < n; ++j) {
    // multiply by (X + x_j)
    for (size_t c = j + 1; c-- > 0;) {
      master[c + 1] += master[c];
      master[c] = master[c] * xs[j];
    }
  }
  std::vector<Gf64> coeffs(n, Gf64::zero());
  std::vector<Gf64> quot(n);
  for (size_t j = 0; j < n; ++j) {
    // synthetic division of M by (X - x_j)
    Gf64 carry = Gf64::zero();
    for (size_t c = n; c-- > 0;) {
      carry = master[c + 1] + carry * xs[j];
      quot[c] = carry;
    }
    Gf64 denom = poly_eval(quot, xs[j]);
    Gf64 scale = ys[j] * denom.inverse();
    for (size_t c = 0; c < n; ++c) coeffs[c] += scale * quot[c];
  }
  return coeffs;
}

Gf64 poly_eval(const std::vector<Gf64>& coeffs, Gf64 x) {
  Gf64 acc = Gf64::zero();
  for (size_t c = coeffs.size(); c-- > 0;) acc = acc * x + coeffs[c];
  return acc;
}

}  // namespace treesieve
