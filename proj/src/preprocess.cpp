#include "treesieve/preprocess.hpp"

#include <algorithm>
#include <stdexcept>

#include "treesieve/coloring.hpp"
#include "treesieve/sieve.hpp"

namespace treesieve {

nlohmann::json ContractionTrace::to_json() const {
  nlohmann::json j;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps)
    j["steps"].push_back({{"triangle", {s.triangle[0], s.triangle[1], s.triangle[2]}},
                          {"merged", s.merged}});
  j["final_weights"] = final_weights;
  return j;
}

EliminationResult eliminate_triangles(const Graph& g) {
  if (g.max_degree() > 3)
    throw std::invalid_argument("triangle elimination requires max degree <= 3");
  Graph cur = g;
  if (!cur.has_weights()) cur.weights.assign(cur.n, 1);
  ContractionTrace trace;

  for (;;) {
    auto tris = cur.triangles();
    if (tris.empty()) break;
    auto [a, b, c] = tris.front();
    // neighbors of the merged vertex: outside neighbors of a, b, c
    std::vector<int> outside;
    for (int v : {a, b, c})
      for (int w : cur.adj[v])
        if (w != a && w != b && w != c) outside.push_back(w);
    std::sort(outside.begin(), outside.end());
    outside.erase(std::unique(outside.begin(), outside.end()), outside.end());

    // new ids: drop b and c, keep a as the merged vertex, compact
    std::vector<int> newid(cur.n, -1);
    int next = 0;
    for (int v = 0; v < cur.n; ++v)
      if (v != b && v != c) newid[v] = next++;
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : cur.edges) {
      const bool ut = (u == a || u == b || u == c);
      const bool vt = (v == a || v == b || v == c);
      if (ut && vt) continue;
      if (ut) edges.emplace_back(newid[a], newid[v]);
      else if (vt) edges.emplace_back(newid[u], newid[a]);
      else edges.emplace_back(newid[u], newid[v]);
    }
    Graph nextg = Graph::from_edges(next, std::move(edges));
    nextg.weights.assign(next, 1);
    for (int v = 0; v < cur.n; ++v)
      if (newid[v] >= 0) nextg.weights[newid[v]] = cur.weights[v];
    nextg.weights[newid[a]] = cur.weights[a] + cur.weights[b] + cur.weights[c];

    trace.steps.push_back({{a + 1, b + 1, c + 1}, newid[a] + 1});
    cur = std::move(nextg);
    if (cur.max_degree() > 3) throw std::logic_error("contraction raised the degree above 3");
  }
  trace.final_weights = cur.weights;
  EliminationResult out{std::move(cur), std::move(trace)};
  return out;
}

namespace {

// Weighted (k',2) sieve over sampler bipartitions; returns the label
// budget on a hit (some eta coefficient with exponent >= min_weight
// nonzero), -1 otherwise.
int weighted_path_trials(const Graph& g, int nodes, int64_t min_weight,
                         const DetectionPlan& plan, uint64_t stream_tag, int64_t& trials_done) {
  const int k = nodes, l = 2;
  const double p = plan.sampler_p;
  const int budget = static_cast<int>(std::ceil((1.0 - p) * k + p * l - 1e-9)) + 1;
  const int r = std::clamp(budget, l, 2 * k - 1);
  const int64_t total =
      plan.trials.value_or(static_cast<int64_t>(r + 1) * plan.confidence_boost);
  for (int64_t trial = 0; trial < total; ++trial) {
    Rng rng = Rng::substream(plan.seed, stream_tag * 131071ull + static_cast<uint64_t>(trial));
    const std::vector<int> indep = sample_independent_set(g, rng);
    Bipartition part = Bipartition::all_v1(g.n);
    for (int v : indep) part.side[v] = 2;
    SieveInstance inst(g, std::move(part), k, l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    const auto coeffs = evaluate_weighted(inst, pt, min_weight, plan.threads);
    ++trials_done;
    for (size_t w = static_cast<size_t>(min_weight); w < coeffs.size(); ++w)
      if (!coeffs[w].is_zero()) return r;
  }
  return -1;
}

}  // namespace

Verdict kpath_subcubic(const Graph& g, int k, const DetectionPlan& plan) {
  if (g.max_degree() > 3)
    throw std::invalid_argument("kpath_subcubic requires max degree <= 3");
  Verdict v;
  if (k < 1) throw std::invalid_argument("k must be >= 1");

  EliminationResult elim = eliminate_triangles(g);
  const Graph& h = elim.graph;
  v.strategy_detail["contractions"] = static_cast<int>(elim.trace.steps.size());
  v.strategy_detail["reduced_n"] = h.n;

  // a path of weight >= k on at most k vertices certifies the k-path
  for (int v1 = 0; v1 < h.n && !v.yes; ++v1) {
    if (h.weight(v1) >= k) {
      v.yes = true;
      v.first_hit_trial = v.trials_run;
      v.strategy_detail["resolved"] = "single contracted vertex";
    }
  }
  if (!v.yes && k >= 2) {
    for (auto [a, b] : h.edges) {
      if (h.weight(a) + h.weight(b) >= k) {
        v.yes = true;
        v.first_hit_trial = v.trials_run;
        v.strategy_detail["resolved"] = "two-vertex path";
        break;
      }
    }
  }
  for (int nodes = 3; nodes <= std::min(k, h.n) && !v.yes; ++nodes) {
    if (max_simple_weight(h, nodes) < k) continue;  // weight k is out of reach
    const int hit_r = weighted_path_trials(h, nodes, k, plan, static_cast<uint64_t>(nodes),
                                           v.trials_run);
    if (hit_r >= 0) {
      v.yes = true;
      v.first_hit_trial = v.trials_run - 1;
      v.r_used = hit_r;
      v.strategy_detail["hit_nodes"] = nodes;
    }
  }
  v.strategy_detail["weight_target"] = k;
  return v;
}

}  // namespace treesieve
