#ifndef TREESIEVE_PREPROCESS_HPP_
#define TREESIEVE_PREPROCESS_HPP_

#include <array>
#include <vector>

#include "json.hpp"
#include "treesieve/detect.hpp"
#include "treesieve/graph.hpp"

namespace treesieve {

/* Audit trail of the triangle contractions: each step records the
   triangle (ids in the graph current at that step, 1-based) and the id
   the merged vertex received. */
struct ContractionTrace {
  struct Step {
    std::array<int, 3> triangle;  // a < b < c
    int merged;                   // id of the contracted vertex afterwards
  };
  std::vector<Step> steps;
  std::vector<int64_t> final_weights;

  nlohmann::json to_json() const;
};

struct EliminationResult {
  Graph graph;  // triangle-free, subcubic, vertex-weighted
  ContractionTrace trace;
};

// Contracts triangles (lowest-indexed first) until none remain. Weights
// start at 1 and add up under contraction, so total weight is preserved.
// Requires max degree <= 3.
EliminationResult eliminate_triangles(const Graph& g);

// k-path in a subcubic graph: eliminate triangles, then run the weighted
// sieve with l = 2 and sampler bipartitions for every node count up to k,
// accepting when some eta coefficient of weight >= k survives.
Verdict kpath_subcubic(const Graph& g, int k, const DetectionPlan& plan);

}  // namespace treesieve

#endif  // TREESIEVE_PREPROCESS_HPP_
