#ifndef TREESIEVE_DETECT_HPP_
#define TREESIEVE_DETECT_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "treesieve/coloring.hpp"
#include "treesieve/graph.hpp"

namespace treesieve {

enum class Strategy { kRandom, kColor, kFractional, kVector, kFixed };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

struct DetectionPlan {
  int k = 0;
  int l = 2;
  Strategy strategy = Strategy::kRandom;
  double epsilon = 0.042894;
  std::optional<int64_t> trials;   // overrides the schedule
  std::optional<int> r_override;   // overrides the label budget
  uint64_t seed = 0;
  int confidence_boost = 1;
  int threads = 1;
  double sampler_p = 0.3589;       // fractional sampler mode
  int fractional_t = 1;            // color-subset size in fractional file mode
  bool log_trials = false;         // per-trial log in the verdict detail

  void validate() const;  // throws std::invalid_argument
};

/* One-sided decision: YES is always sound, NO may be wrong with the
   probability bounded by the trial schedule. */
struct Verdict {
  bool yes = false;
  int64_t trials_run = 0;
  std::optional<int64_t> first_hit_trial;  // set iff yes
  int r_used = 0;
  nlohmann::json strategy_detail;
};

struct Schedule {
  int t = 0;
  int r = 0;
  int64_t trials = 0;
};

// t = floor((1/4+eps)k), r = k - t + ceil(l/2),
// trials = ceil(2^(k+1) / C(k-1, 2t)), binomials computed exactly.
Schedule schedule_params(int k, int l, double epsilon);

// Exact binomial coefficient, saturating at 2^62. n <= 130.
int64_t binomial(int n, int k);

struct StrategyInputs {
  const ProperColoring* coloring = nullptr;
  const FractionalColoring* fractional = nullptr;
  const VectorColoring* vectors = nullptr;
  const Bipartition* partition = nullptr;
};

Verdict detect_tree_random(const Graph& g, const DetectionPlan& plan);
Verdict detect_tree_colored(const Graph& g, const ProperColoring& c, const DetectionPlan& plan);
Verdict detect_tree_fractional(const Graph& g, const FractionalColoring& fc,
                               const DetectionPlan& plan);
// Sampler mode of the fractional strategy: V2 is a sampled maximal
// independent set, repeated O(k) times.
Verdict detect_tree_sampler(const Graph& g, const DetectionPlan& plan);
Verdict detect_tree_vector(const Graph& g, const VectorColoring& vc, const DetectionPlan& plan);
Verdict detect_tree_fixed(const Graph& g, const Bipartition& part, const DetectionPlan& plan);

// Dispatch on plan.strategy; pulls the needed side input from `in` (the
// fractional strategy without a file falls back to the sampler).
Verdict detect_tree(const Graph& g, const DetectionPlan& plan, const StrategyInputs& in = {});

Verdict kpath(const Graph& g, int k, const DetectionPlan& plan, const StrategyInputs& in = {});
Verdict hamiltonicity(const Graph& g, const DetectionPlan& plan, const StrategyInputs& in = {});

// Two-strategy k-internal-spanning-tree solver: (k+l,l)-tree searches for
// small l, random matching/tree splits for large l.
Verdict kist(const Graph& g, int k, const DetectionPlan& plan, double alpha = 0.8627);

}  // namespace treesieve

#endif  // TREESIEVE_DETECT_HPP_
