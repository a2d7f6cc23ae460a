#include "treesieve/detect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "treesieve/matching.hpp"
#include "treesieve/sieve.hpp"

namespace treesieve {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kRandom: return "random";
    case Strategy::kColor: return "color";
    case Strategy::kFractional: return "fractional";
    case Strategy::kVector: return "vector";
    case Strategy::kFixed: return "bipartition";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "random") return Strategy::kRandom;
  if (name == "color") return Strategy::kColor;
  if (name == "fractional") return Strategy::kFractional;
  if (name == "vector") return Strategy::kVector;
  if (name == "bipartition" || name == "fixed") return Strategy::kFixed;
  return std::nullopt;
}

void DetectionPlan::validate() const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (l < 2 || l > std::max(2, k - 1)) throw std::invalid_argument("need 2 <= l <= max(2, k-1)");
  if (!(epsilon >= 0.0 && epsilon < 0.25)) throw std::invalid_argument("epsilon must be in [0, 1/4)");
  if (trials && *trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (confidence_boost < 1) throw std::invalid_argument("confidence_boost must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(sampler_p > 0.0 && sampler_p < 1.0)) throw std::invalid_argument("sampler p must be in (0,1)");
}

int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 130) throw std::invalid_argument("binomial supports n <= 130");
  k = std::min(k, n - k);
  unsigned __int128 num = 1;
  for (int i = 0; i < k; ++i) {
    num = num * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    if (num > (static_cast<unsigned __int128>(1) << 62)) return 1ll << 62;
  }
  return static_cast<int64_t>(num);
}

Schedule schedule_params(int k, int l, double epsilon) {
  if (k < 1 || k > 64) throw std::invalid_argument("schedule supports 1 <= k <= 64");
  if (!(epsilon >= 0.0 && epsilon < 0.25)) throw std::invalid_argument("epsilon must be in [0, 1/4)");
  Schedule s;
  s.t = static_cast<int>(std::floor((0.25 + epsilon) * k));
  s.r = (k - s.t) + (l + 1) / 2;
  const int64_t c = binomial(k - 1, 2 * s.t);
  if (c <= 0) throw std::invalid_argument("schedule: t exceeds (k-1)/2");
  const unsigned __int128 pow2 = static_cast<unsigned __int128>(1) << (k + 1);
  const unsigned __int128 denom = static_cast<unsigned __int128>(c);
  s.trials = static_cast<int64_t>((pow2 + denom - 1) / denom);
  return s;
}

namespace {

int clamp_budget(int r, int k, int l) { return std::clamp(r, l, 2 * k - 1); }

int resolve_budget(const DetectionPlan& plan, int default_r) {
  int r = plan.r_override.value_or(default_r);
  if (r < plan.l || r > 2 * plan.k - 1)
    throw std::invalid_argument("label budget must satisfy l <= r <= 2k-1");
  return r;
}

Verdict trivial_verdict(bool yes, const char* why) {
  Verdict v;
  v.yes = yes;
  v.trials_run = 0;
  v.r_used = 0;
  if (yes) v.first_hit_trial = 0;
  v.strategy_detail["resolved"] = why;
  return v;
}

// Handles the degenerate shapes the sieve does not model. Returns a
// verdict when the instance is decided without any evaluation.
std::optional<Verdict> combinatorial_cases(const Graph& g, const DetectionPlan& plan) {
  if (plan.k > g.n) return trivial_verdict(false, "k exceeds vertex count");
  if (plan.k == 1) return trivial_verdict(false, "no 1-vertex tree has 2 leaves");
  if (plan.k == 2) {
    if (!g.edges.empty()) return trivial_verdict(true, "any edge is a (2,2)-tree");
    return trivial_verdict(false, "no edges");
  }
  if (g.edges.empty()) return trivial_verdict(false, "no edges");
  return std::nullopt;
}

/* Runs `total` trials; fn(trial, rng) evaluates one bipartition and
   reports a hit. Trials execute in index blocks so the first hit is the
   same regardless of thread count, and one-sided error makes cancelling
   the remainder safe. */
template <typename Fn>
Verdict run_trials(int64_t total, const DetectionPlan& plan, int r_used, Fn&& fn) {
  Verdict v;
  v.r_used = r_used;
  const int threads = std::max(1, plan.threads);
  constexpr int64_t kLogCap = 10'000;
  nlohmann::json log = nlohmann::json::array();
  auto log_one = [&](int64_t idx, bool hit) {
    if (plan.log_trials && idx < kLogCap) log.push_back({{"trial", idx}, {"hit", hit}});
  };
  int64_t done = 0;
  while (done < total && !v.first_hit_trial) {
    const int64_t block = std::min<int64_t>(total - done, std::max(1, threads));
    if (threads == 1 || block == 1) {
      for (int64_t i = 0; i < block && !v.first_hit_trial; ++i) {
        const int64_t idx = done + i;
        Rng rng = Rng::substream(plan.seed, static_cast<uint64_t>(idx));
        ++v.trials_run;
        const bool hit = fn(idx, rng);
        log_one(idx, hit);
        if (hit) v.first_hit_trial = idx;
      }
      done += block;
    } else {
      std::vector<int8_t> hit(block, 0);
      std::atomic<int64_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const int64_t i = next.fetch_add(1);
            if (i >= block) return;
            Rng rng = Rng::substream(plan.seed, static_cast<uint64_t>(done + i));
            hit[i] = fn(done + i, rng) ? 1 : 0;
          }
        });
      }
      for (auto& t : pool) t.join();
      v.trials_run += block;
      for (int64_t i = 0; i < block; ++i) {
        if (!v.first_hit_trial) log_one(done + i, hit[i]);
        if (hit[i] && !v.first_hit_trial) v.first_hit_trial = done + i;
      }
      done += block;
    }
  }
  v.yes = v.first_hit_trial.has_value();
  // canonical count: speculative same-block work is not part of the log,
  // so reports do not depend on the thread count
  if (v.yes) v.trials_run = *v.first_hit_trial + 1;
  if (plan.log_trials) v.strategy_detail["trial_log"] = std::move(log);
  return v;
}

}  // namespace

Verdict detect_tree_random(const Graph& g, const DetectionPlan& plan) {
  plan.validate();
  if (auto v = combinatorial_cases(g, plan)) return *v;
  const Schedule sched = schedule_params(plan.k, plan.l, plan.epsilon);
  const int r = resolve_budget(plan, clamp_budget(sched.r, plan.k, plan.l));
  const int64_t total = plan.trials.value_or(sched.trials * plan.confidence_boost);
  Verdict v = run_trials(total, plan, r, [&](int64_t, Rng& rng) {
    Bipartition part = Bipartition::uniform_random(g.n, rng);
    SieveInstance inst(g, std::move(part), plan.k, plan.l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt).is_zero();
  });
  v.strategy_detail["schedule"] = {{"t", sched.t}, {"r", sched.r}, {"trials", sched.trials}};
  return v;
}

namespace {

struct SubsetChoice {
  std::vector<std::vector<int>> subsets;
  bool sampled = false;
};

// All x-subsets of [d] when feasible, otherwise a uniform sample.
SubsetChoice choose_subsets(int d, int x, int64_t cap, uint64_t seed) {
  SubsetChoice out;
  const int64_t count = binomial(d, x);
  if (count <= cap) {
    std::vector<int> pick(x);
    for (int i = 0; i < x; ++i) pick[i] = i;
    if (x == 0) {
      out.subsets.push_back({});
      return out;
    }
    for (;;) {
      out.subsets.push_back(pick);
      int i = x - 1;
      while (i >= 0 && pick[i] == d - x + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < x; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
  }
  out.sampled = true;
  Rng rng = Rng::substream(seed, 0xc0105eb5ull);
  std::vector<int> all(d);
  for (int i = 0; i < d; ++i) all[i] = i;
  for (int64_t s = 0; s < cap; ++s) {
    for (int i = 0; i < x; ++i)
      std::swap(all[i], all[i + rng.next_below(static_cast<uint64_t>(d - i))]);
    std::vector<int> pick(all.begin(), all.begin() + x);
    std::sort(pick.begin(), pick.end());
    out.subsets.push_back(std::move(pick));
  }
  return out;
}

}  // namespace

Verdict detect_tree_colored(const Graph& g, const ProperColoring& c, const DetectionPlan& plan) {
  plan.validate();
  c.validate(g);
  if (auto v = combinatorial_cases(g, plan)) return *v;
  const int d = c.d;
  const int k = plan.k, l = plan.l;
  // x = round-half-away of (d + (l/k)(d-1))/2; both neighbors are sound
  // choices, so take whichever yields the smaller budget.
  const double xi = (d + (static_cast<double>(l) / k) * (d - 1)) / 2.0;
  const int half_away = static_cast<int>(xi >= 0 ? std::floor(xi + 0.5) : std::ceil(xi - 0.5));
  auto bound_for = [&](int x) {
    return (1.0 - static_cast<double>(x) * (d - x) / (static_cast<double>(d) * (d - 1))) * k +
           (1.0 - static_cast<double>(x) / d) * l;
  };
  int best_x = -1;
  int best_r = 0;
  for (int x : {static_cast<int>(std::floor(xi)), static_cast<int>(std::ceil(xi))}) {
    x = std::clamp(x, 0, d);
    const int r = static_cast<int>(std::ceil(bound_for(x) - 1e-9));
    if (best_x < 0 || r < best_r || (r == best_r && x == half_away)) {
      best_x = x;
      best_r = r;
    }
  }
  const int r = resolve_budget(plan, clamp_budget(best_r, k, l));

  SubsetChoice sc = choose_subsets(d, best_x, 10'000, plan.seed);
  const auto classes = c.classes();
  const int64_t per_pass = static_cast<int64_t>(sc.subsets.size());
  const int64_t total = plan.trials.value_or(per_pass * plan.confidence_boost);

  Verdict v = run_trials(total, plan, r, [&](int64_t idx, Rng& rng) {
    const auto& subset = sc.subsets[static_cast<size_t>(idx % per_pass)];
    Bipartition part = Bipartition::all_v2(g.n);
    for (int color : subset)
      for (int vert : classes[color]) part.side[vert] = 1;
    SieveInstance inst(g, std::move(part), k, l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt).is_zero();
  });
  v.strategy_detail.update({{"d", d},
                            {"x", best_x},
                            {"bound", bound_for(best_x)},
                            {"subsets", per_pass},
                            {"subsets_sampled", sc.sampled}});
  return v;
}

Verdict detect_tree_fractional(const Graph& g, const FractionalColoring& fc,
                               const DetectionPlan& plan) {
  plan.validate();
  fc.validate(g);
  if (auto v = combinatorial_cases(g, plan)) return *v;
  const int a = fc.a, b = fc.b;
  const int t = std::clamp(plan.fractional_t, 1, b);
  const int k = plan.k, l = plan.l;
  const double cat = static_cast<double>(binomial(a, t));
  const double hit_edge = (binomial(a - b, t) - binomial(a - 2 * b, t)) / cat;
  const double hit_leaf = binomial(a - b, t) / cat;
  const double bound = (1.0 - hit_edge) * k + (1.0 - hit_leaf) * l;
  const int r = resolve_budget(plan, clamp_budget(static_cast<int>(std::ceil(bound - 1e-9)), k, l));

  SubsetChoice sc = choose_subsets(a, t, 10'000, plan.seed);
  const int64_t per_pass = static_cast<int64_t>(sc.subsets.size());
  const int64_t total = plan.trials.value_or(per_pass * plan.confidence_boost);

  Verdict v = run_trials(total, plan, r, [&](int64_t idx, Rng& rng) {
    const auto& subset = sc.subsets[static_cast<size_t>(idx % per_pass)];
    Bipartition part = Bipartition::all_v1(g.n);
    for (int vert = 0; vert < g.n; ++vert) {
      for (int color : subset) {
        if (std::binary_search(fc.colorset[vert].begin(), fc.colorset[vert].end(), color + 1)) {
          part.side[vert] = 2;
          break;
        }
      }
    }
    SieveInstance inst(g, std::move(part), k, l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt).is_zero();
  });
  v.strategy_detail.update({{"a", a}, {"b", b}, {"t", t}, {"bound", bound},
                            {"subsets", per_pass}, {"subsets_sampled", sc.sampled}});
  return v;
}

Verdict detect_tree_sampler(const Graph& g, const DetectionPlan& plan) {
  plan.validate();
  if (auto v = combinatorial_cases(g, plan)) return *v;
  const int k = plan.k, l = plan.l;
  const double p = plan.sampler_p;
  const int budget = static_cast<int>(std::ceil((1.0 - p) * k + p * l - 1e-9)) + 1;
  const int r = resolve_budget(plan, clamp_budget(budget, k, l));
  // expectation is below r-1, so one draw is nice with probability >= 1/r
  const int64_t total = plan.trials.value_or(static_cast<int64_t>(r + 1) * plan.confidence_boost);
  Verdict v = run_trials(total, plan, r, [&](int64_t, Rng& rng) {
    const std::vector<int> indep = sample_independent_set(g, rng);
    Bipartition part = Bipartition::all_v1(g.n);
    for (int vert : indep) part.side[vert] = 2;
    SieveInstance inst(g, std::move(part), k, l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt).is_zero();
  });
  v.strategy_detail.update({{"sampler_p", p}, {"budget", budget}});
  return v;
}

Verdict detect_tree_vector(const Graph& g, const VectorColoring& vc, const DetectionPlan& plan) {
  plan.validate();
  vc.validate(g);
  if (auto v = combinatorial_cases(g, plan)) return *v;
  const int k = plan.k, l = plan.l;
  const double inner = std::clamp(-1.0 / (vc.value - 1.0), -1.0, 1.0);
  const double expect =
      (k + l) / 2.0 + (1.0 - std::acos(inner) / 3.14159265358979323846) * (k - 1) / 2.0;
  const int budget = static_cast<int>(std::ceil(expect - 1e-9));
  const int r = resolve_budget(plan, clamp_budget(budget, k, l));
  const int64_t total =
      plan.trials.value_or(static_cast<int64_t>(budget + 1) * plan.confidence_boost);
  Verdict v = run_trials(total, plan, r, [&](int64_t, Rng& rng) {
    Bipartition part = hyperplane_bipartition(vc, rng);
    SieveInstance inst(g, std::move(part), k, l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt).is_zero();
  });
  v.strategy_detail.update({{"value", vc.value}, {"expected_la", expect}});
  return v;
}

Verdict detect_tree_fixed(const Graph& g, const Bipartition& part, const DetectionPlan& plan) {
  plan.validate();
  if (part.n() != g.n) throw std::invalid_argument("bipartition does not match graph");
  if (auto v = combinatorial_cases(g, plan)) return *v;
  // k + l labels always suffice for a fixed partition
  const int r = resolve_budget(plan, clamp_budget(plan.k + plan.l, plan.k, plan.l));
  const int64_t total = plan.trials.value_or(plan.confidence_boost);
  // few trials here: parallelize inside the subset loop instead
  DetectionPlan serial = plan;
  serial.threads = 1;
  Verdict v = run_trials(total, serial, r, [&](int64_t, Rng& rng) {
    SieveInstance inst(g, part, plan.k, plan.l, r);
    EvaluationPoint pt = EvaluationPoint::sample(g, r, rng);
    return !evaluate_P(inst, pt, plan.threads).is_zero();
  });
  return v;
}

Verdict detect_tree(const Graph& g, const DetectionPlan& plan, const StrategyInputs& in) {
  switch (plan.strategy) {
    case Strategy::kRandom:
      return detect_tree_random(g, plan);
    case Strategy::kColor: {
      if (in.coloring) return detect_tree_colored(g, *in.coloring, plan);
      const ProperColoring c = greedy_coloring(g);
      Verdict v = detect_tree_colored(g, c, plan);
      v.strategy_detail["coloring"] = "greedy";
      return v;
    }
    case Strategy::kFractional:
      if (in.fractional) return detect_tree_fractional(g, *in.fractional, plan);
      return detect_tree_sampler(g, plan);
    case Strategy::kVector:
      if (!in.vectors) throw std::invalid_argument("vector strategy needs a vector coloring");
      return detect_tree_vector(g, *in.vectors, plan);
    case Strategy::kFixed:
      if (!in.partition) throw std::invalid_argument("bipartition strategy needs a partition");
      return detect_tree_fixed(g, *in.partition, plan);
  }
  throw std::logic_error("unreachable");
}

Verdict kpath(const Graph& g, int k, const DetectionPlan& plan, const StrategyInputs& in) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k == 1) return trivial_verdict(g.n >= 1, "single vertex");
  if (k == 2) return trivial_verdict(!g.edges.empty(), "single edge");
  DetectionPlan p = plan;
  p.k = k;
  p.l = 2;
  return detect_tree(g, p, in);
}

Verdict hamiltonicity(const Graph& g, const DetectionPlan& plan, const StrategyInputs& in) {
  return kpath(g, g.n, plan, in);
}

namespace {

// Repetition count of the matching/tree split for leaf ratio gamma = l/k.
double strategy_b_reps(int k, int l) {
  const int a1 = 4 * l - 2 * k;      // matching share exponent
  const int a2 = 3 * (k - l);        // tree share exponent
  const double kl = k + l;
  double reps = 1.0;
  if (a1 > 0) reps *= std::pow(kl / a1, a1);
  if (a2 > 0) reps *= std::pow(kl / a2, a2);
  return reps;
}

}  // namespace

Verdict kist(const Graph& g, int k, const DetectionPlan& plan, double alpha) {
  if (plan.confidence_boost < 1 || plan.threads < 1)
    throw std::invalid_argument("bad plan parameters");
  Verdict v;
  v.strategy_detail["alpha"] = alpha;
  if (k <= 0) {
    v.yes = g.n >= 1 && g.is_connected();
    if (v.yes) v.first_hit_trial = 0;
    v.strategy_detail["resolved"] = "k <= 0: any spanning tree works";
    return v;
  }
  if (g.n <= 1 || !g.is_connected()) {
    v.strategy_detail["resolved"] = "no spanning tree with internal vertices";
    return v;
  }
  if (k == 1) {
    // a minimal witness needs two leaves, so the k=1 case is structural
    v.yes = g.n >= 3;
    if (v.yes) v.first_hit_trial = 0;
    v.strategy_detail["resolved"] = "k = 1: internal vertex exists iff n >= 3";
    return v;
  }
  if (k > g.n - 2) {
    v.strategy_detail["resolved"] = "spanning tree keeps at least two leaves";
    return v;
  }

  int l_cap = k;
  const int max_deg = g.max_degree();
  if (max_deg >= 2) {
    const double cap = k - static_cast<double>(k - 2) / (max_deg - 1);
    l_cap = std::min<int>(l_cap, static_cast<int>(std::floor(cap + 1e-9)));
    v.strategy_detail["leaf_cap"] = l_cap;
  }

  const int a_top = static_cast<int>(std::floor(alpha * k + 1e-9));
  const int b_low = static_cast<int>(std::ceil(alpha * k - 1e-9));
  int64_t trial_counter = 0;
  nlohmann::json attempts = nlohmann::json::array();

  auto sub_seed = [&](int l, int64_t rep) {
    return Rng::substream(plan.seed, (static_cast<uint64_t>(l) << 32) | static_cast<uint64_t>(rep))
        .next_u64();
  };

  for (int l = 2; l <= l_cap && !v.yes; ++l) {
    if (k + l > g.n) break;
    // l = k-1 trims to an unrealizable (3,1) tree, so strategy A covers it
    const bool in_a = l <= a_top || k - l == 1;
    const bool in_b = l >= b_low && k - l != 1;
    if (in_a) {
      DetectionPlan sub = plan;
      sub.k = k + l;
      sub.l = l;
      sub.seed = sub_seed(l, -1);
      sub.trials.reset();
      sub.r_override.reset();
      Verdict res = detect_tree_random(g, sub);
      trial_counter += res.trials_run;
      attempts.push_back({{"strategy", "A"}, {"l", l}, {"trials", res.trials_run},
                          {"r", res.r_used}, {"hit", res.yes}});
      if (res.yes) {
        v.yes = true;
        v.first_hit_trial = trial_counter - 1;
        v.r_used = res.r_used;
      }
      continue;
    }
    if (!in_b) continue;
    if (2 * l <= k) continue;  // trimming needs a majority of leaves

    const int match_need = 2 * l - k;
    const int tree_k = 3 * (k - l);
    const int tree_l = k - l;
    const double p = static_cast<double>(4 * l - 2 * k) / (k + l);
    int64_t reps = static_cast<int64_t>(std::ceil(strategy_b_reps(k, l)));
    reps = std::min<int64_t>(reps, 1'000'000) * plan.confidence_boost;
    bool capped = strategy_b_reps(k, l) > 1'000'000;

    int64_t hits_here = -1;
    for (int64_t rep = 0; rep < reps && !v.yes; ++rep) {
      Rng rng(sub_seed(l, rep));
      ++trial_counter;
      std::vector<int> vm, vt;
      for (int vert = 0; vert < g.n; ++vert)
        (rng.next_bernoulli(p) ? vm : vt).push_back(vert);
      if (static_cast<int>(vm.size()) < 2 * match_need) continue;
      InducedSubgraph gm = induced_subgraph(g, vm);
      if (matching_size(gm.graph, rng) < match_need) continue;
      if (tree_k == 0) {
        v.yes = true;  // matching alone carries k internal vertices
        hits_here = rep;
        break;
      }
      if (static_cast<int>(vt.size()) < tree_k) continue;
      InducedSubgraph gt = induced_subgraph(g, vt);
      DetectionPlan sub = plan;
      sub.k = tree_k;
      sub.l = tree_l;
      sub.seed = rng.next_u64();
      sub.trials.reset();
      sub.r_override.reset();
      Verdict res = detect_tree_random(gt.graph, sub);
      if (res.yes) {
        v.yes = true;
        v.r_used = res.r_used;
        hits_here = rep;
      }
    }
    attempts.push_back({{"strategy", "B"}, {"l", l}, {"p", p}, {"reps", reps},
                        {"reps_capped", capped}, {"hit", hits_here >= 0}});
    if (v.yes) v.first_hit_trial = trial_counter - 1;
  }
  v.trials_run = trial_counter;
  v.strategy_detail["attempts"] = std::move(attempts);
  return v;
}

}  // namespace treesieve
