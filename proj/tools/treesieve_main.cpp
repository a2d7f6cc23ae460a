// Command-line surface for the algebraic (k,l)-tree sieve: detect / kpath /
// ham / kist solvers, the subcubic preprocessor, and a benchmark harness.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "treesieve/coloring.hpp"
#include "treesieve/detect.hpp"
#include "treesieve/graph.hpp"
#include "treesieve/oracle.hpp"
#include "treesieve/preprocess.hpp"
#include "treesieve/sieve.hpp"

namespace ts = treesieve;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "treesieve 0.1.0";
constexpr const char* kSchema = "treesieve-report-v1";

double seconds_since(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

struct CommonArgs {
  std::string graph_path;
  std::string strategy = "random";
  std::string coloring_path, fractional_path, vectors_path, partition_path;
  double epsilon = 0.042894;
  double sampler_p = 0.3589;
  int64_t trials = -1;
  int r_override = -1;
  uint64_t seed = 1;
  int boost = 1;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  bool json_out = false;
  bool log_trials = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_strategy) {
  cmd->add_option("--graph", a.graph_path, "graph file (edge list or DIMACS)")->required();
  if (with_strategy)
    cmd->add_option("--strategy", a.strategy,
                    "bipartition strategy: random|color|fractional|vector|bipartition");
  cmd->add_option("--coloring", a.coloring_path, "proper coloring file (color strategy)");
  cmd->add_option("--fractional", a.fractional_path,
                  "(a:b) coloring file (fractional strategy; omit for the sampler)");
  cmd->add_option("--vectors", a.vectors_path, "vector coloring file (vector strategy)");
  cmd->add_option("--partition", a.partition_path, "fixed bipartition file");
  cmd->add_option("--epsilon", a.epsilon, "schedule parameter in [0, 1/4)");
  cmd->add_option("--sampler-p", a.sampler_p, "inclusion bound for the sampler mode");
  cmd->add_option("--trials", a.trials, "override the trial count");
  cmd->add_option("--r", a.r_override, "override the label budget");
  cmd->add_option("--seed", a.seed, "root seed; runs are reproducible per seed");
  cmd->add_option("--boost", a.boost, "confidence multiplier on the trial count");
  cmd->add_option("--threads", a.threads, "worker threads (verdicts are thread-count independent)");
  cmd->add_flag("--json", a.json_out, "emit a JSON run report on stdout");
  cmd->add_flag("--log-trials", a.log_trials, "record a per-trial log in the report");
}

struct LoadedInputs {
  std::optional<ts::ProperColoring> coloring;
  std::optional<ts::FractionalColoring> fractional;
  std::optional<ts::VectorColoring> vectors;
  std::optional<ts::Bipartition> partition;
  ts::StrategyInputs view() const {
    ts::StrategyInputs in;
    if (coloring) in.coloring = &*coloring;
    if (fractional) in.fractional = &*fractional;
    if (vectors) in.vectors = &*vectors;
    if (partition) in.partition = &*partition;
    return in;
  }
};

LoadedInputs load_inputs(const CommonArgs& a, const ts::Graph& g) {
  LoadedInputs in;
  if (!a.coloring_path.empty()) in.coloring = ts::load_coloring(a.coloring_path, g.n);
  if (!a.fractional_path.empty())
    in.fractional = ts::load_fractional_coloring(a.fractional_path, g.n);
  if (!a.vectors_path.empty()) in.vectors = ts::load_vector_coloring(a.vectors_path, g.n);
  if (!a.partition_path.empty()) in.partition = ts::load_bipartition(a.partition_path, g.n);
  return in;
}

ts::DetectionPlan plan_from(const CommonArgs& a, int k, int l) {
  ts::DetectionPlan p;
  p.k = k;
  p.l = l;
  auto strat = ts::strategy_from_name(a.strategy);
  if (!strat) throw std::invalid_argument("unknown strategy '" + a.strategy + "'");
  p.strategy = *strat;
  p.epsilon = a.epsilon;
  p.sampler_p = a.sampler_p;
  if (a.trials >= 0) p.trials = a.trials;
  if (a.r_override >= 0) p.r_override = a.r_override;
  p.seed = a.seed;
  p.confidence_boost = a.boost;
  p.threads = a.threads;
  p.log_trials = a.log_trials;
  return p;
}

json graph_stats(const ts::Graph& g, const std::string& path) {
  return {{"path", path}, {"n", g.n}, {"m", g.edge_count()}, {"max_degree", g.max_degree()}};
}

json plan_json(const ts::DetectionPlan& p) {
  json j{{"k", p.k},
         {"l", p.l},
         {"strategy", ts::strategy_name(p.strategy)},
         {"epsilon", p.epsilon},
         {"seed", p.seed},
         {"boost", p.confidence_boost},
         {"threads", p.threads}};
  if (p.trials) j["trials"] = *p.trials;
  if (p.r_override) j["r"] = *p.r_override;
  return j;
}

json verdict_json(const ts::Verdict& v) {
  json j{{"answer", v.yes ? "YES" : "NO"},
         {"trials_run", v.trials_run},
         {"r_used", v.r_used},
         {"strategy_detail", v.strategy_detail}};
  if (v.first_hit_trial) j["first_hit_trial"] = *v.first_hit_trial;
  return j;
}

int report_and_exit(const CommonArgs& a, const std::string& command, const json& graph,
                    const json& plan, const ts::Verdict& v, double parse_s, double solve_s) {
  if (a.json_out) {
    json out{{"schema", kSchema},       {"version", kVersion}, {"command", command},
             {"graph", graph},          {"plan", plan},        {"verdict", verdict_json(v)},
             {"timing", json{{"parse_seconds", parse_s}, {"solve_seconds", solve_s}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << command << ": " << (v.yes ? "YES" : "NO") << " (trials=" << v.trials_run
              << ", r=" << v.r_used;
    if (v.first_hit_trial) std::cout << ", first_hit=" << *v.first_hit_trial;
    std::cout << ")\n";
  }
  return v.yes ? 0 : 1;
}

int run_detect_like(const CommonArgs& a, const std::string& command, int k, int l,
                    std::optional<int> kist_k, double alpha) {
  auto t0 = std::chrono::steady_clock::now();
  ts::Graph g = ts::load_graph(a.graph_path);
  LoadedInputs inputs = load_inputs(a, g);
  const double parse_s = seconds_since(t0);

  ts::DetectionPlan plan = plan_from(a, k, l);
  auto t1 = std::chrono::steady_clock::now();
  ts::Verdict v;
  if (kist_k) {
    v = ts::kist(g, *kist_k, plan, alpha);
  } else if (command == "kpath") {
    v = ts::kpath(g, k, plan, inputs.view());
  } else if (command == "ham") {
    v = ts::hamiltonicity(g, plan, inputs.view());
  } else {
    plan.validate();
    v = ts::detect_tree(g, plan, inputs.view());
  }
  const double solve_s = seconds_since(t1);
  json pj = plan_json(plan);
  if (kist_k) {
    pj["k"] = *kist_k;
    pj["alpha"] = alpha;
    pj.erase("l");
  }
  if (command == "ham") pj["k"] = g.n;
  return report_and_exit(a, command, graph_stats(g, a.graph_path), pj, v, parse_s, solve_s);
}

int run_preprocess(const CommonArgs& a, const std::string& out_path,
                   const std::string& trace_path) {
  ts::Graph g = ts::load_graph(a.graph_path);
  ts::EliminationResult res = ts::eliminate_triangles(g);
  const std::string serialized = ts::serialize_graph(res.graph);
  if (out_path.empty()) {
    std::cout << serialized;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << serialized;
  }
  if (!trace_path.empty()) {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + trace_path);
    f << res.trace.to_json().dump(2) << "\n";
  }
  std::cerr << "contracted " << res.trace.steps.size() << " triangles; " << res.graph.n
            << " vertices remain\n";
  return 0;
}

struct BenchArgs {
  std::string corpus, mode = "sweep", csv_path, graph_path;
  int kmin = 3, kmax = 8;
  std::string strategies = "random";
  uint64_t seed = 1;
  int boost = 1;
  int threads = 2;
  int samples = 10000;
  int k = 8, l = 2, rmin = 6, rmax = 10;
};

void write_rows(const BenchArgs& b, const std::string& header, const std::vector<std::string>& rows) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!b.csv_path.empty()) {
    file.open(b.csv_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + b.csv_path);
    os = &file;
  }
  *os << header << "\n";
  for (const auto& r : rows) *os << r << "\n";
}

int run_bench_sweep(const BenchArgs& b) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(b.corpus))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::string> strategies;
  {
    std::stringstream ss(b.strategies);
    std::string item;
    while (std::getline(ss, item, ',')) strategies.push_back(item);
  }
  std::vector<std::string> rows;
  uint64_t row_id = 0;
  for (const auto& f : files) {
    ts::Graph g;
    try {
      g = ts::load_graph(f.string());
    } catch (const std::exception& e) {
      std::cerr << "skip " << f << ": " << e.what() << "\n";
      continue;
    }
    for (const std::string& sname : strategies) {
      auto strat = ts::strategy_from_name(sname);
      if (!strat) throw std::invalid_argument("unknown strategy '" + sname + "'");
      for (int k = b.kmin; k <= std::min(b.kmax, g.n); ++k) {
        ts::DetectionPlan plan;
        plan.k = k;
        plan.l = 2;
        plan.strategy = *strat;
        plan.seed = ts::Rng::substream(b.seed, row_id).next_u64();
        plan.confidence_boost = b.boost;
        plan.threads = b.threads;
        auto t0 = std::chrono::steady_clock::now();
        ts::Verdict v = ts::kpath(g, k, plan);
        const double secs = seconds_since(t0);
        std::ostringstream row;
        row << f.filename().string() << "," << g.n << "," << g.edge_count() << "," << k << ","
            << sname << "," << v.r_used << "," << v.trials_run << "," << (v.yes ? "YES" : "NO")
            << "," << (v.first_hit_trial ? std::to_string(*v.first_hit_trial) : "") << ","
            << secs;
        rows.push_back(row.str());
        ++row_id;
      }
    }
  }
  write_rows(b, "graph,n,m,k,strategy,r,trials,verdict,first_hit,seconds", rows);
  return 0;
}

// Histogram of |la| over uniform bipartitions of a tree, with the
// expectation and per-t tail bounds printed alongside.
int run_bench_la_hist(const BenchArgs& b) {
  ts::Graph g = ts::load_graph(b.graph_path);
  if (!g.is_connected() || g.edge_count() != g.n - 1)
    throw std::invalid_argument("la-hist mode expects a tree");
  int leaves = 0;
  for (int v = 0; v < g.n; ++v) leaves += g.degree(v) == 1;
  ts::Rng rng(b.seed);
  std::vector<int64_t> hist(2 * g.n, 0);
  double sum = 0;
  for (int s = 0; s < b.samples; ++s) {
    ts::Bipartition part = ts::Bipartition::uniform_random(g.n, rng);
    const int la = ts::oracle::labellable_set(g.edges, part).size();
    ++hist[la];
    sum += la;
  }
  std::vector<std::string> rows;
  for (size_t la = 0; la < hist.size(); ++la)
    if (hist[la]) rows.push_back(std::to_string(la) + "," + std::to_string(hist[la]));
  write_rows(b, "la,count", rows);
  const double expect = 0.75 * g.n + 0.5 * leaves - 0.25;
  std::cerr << "k=" << g.n << " l=" << leaves << " mean=" << sum / b.samples
            << " expected=" << expect << "\n";
  for (int t = 0; 2 * t <= g.n - 1; ++t) {
    int64_t good = 0;
    const double thresh = g.n + leaves / 2.0 - t;
    for (size_t la = 0; la < hist.size(); ++la)
      if (static_cast<double>(la) <= thresh) good += hist[la];
    const double bound = ts::binomial(g.n - 1, 2 * t) / std::exp2(g.n + 1);
    std::cerr << "t=" << t << " empirical=" << static_cast<double>(good) / b.samples
              << " bound=" << bound << "\n";
  }
  return 0;
}

// Per-evaluation wall time as the label budget grows by one.
int run_bench_rtime(const BenchArgs& b) {
  ts::Graph g = ts::load_graph(b.graph_path);
  ts::Rng rng(b.seed);
  ts::Bipartition part = ts::Bipartition::uniform_random(g.n, rng);
  std::vector<std::string> rows;
  double prev = 0;
  for (int r = b.rmin; r <= b.rmax; ++r) {
    ts::SieveInstance inst(g, part, b.k, b.l, r);
    ts::EvaluationPoint pt = ts::EvaluationPoint::sample(g, r, rng);
    auto t0 = std::chrono::steady_clock::now();
    ts::evaluate_P(inst, pt, b.threads);
    const double secs = seconds_since(t0);
    std::ostringstream row;
    row << r << "," << secs << "," << (prev > 0 ? secs / prev : 0.0);
    rows.push_back(row.str());
    prev = secs;
  }
  write_rows(b, "r,seconds,ratio", rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic sieve for k-trees, k-paths, Hamiltonicity and k-IST"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonArgs detect_args;
  int detect_k = 0, detect_l = 2;
  auto* cmd_detect = app.add_subcommand("detect", "(k,l)-tree detection");
  cmd_detect->add_option("--k", detect_k, "tree size")->required();
  cmd_detect->add_option("--l", detect_l, "leaf count")->required();
  add_common(cmd_detect, detect_args, true);

  CommonArgs kpath_args;
  int kpath_k = 0;
  auto* cmd_kpath = app.add_subcommand("kpath", "k-path detection");
  cmd_kpath->add_option("--k", kpath_k, "path vertex count")->required();
  add_common(cmd_kpath, kpath_args, true);

  CommonArgs ham_args;
  auto* cmd_ham = app.add_subcommand("ham", "Hamiltonian path detection (k-path with k = n)");
  add_common(cmd_ham, ham_args, true);

  CommonArgs kist_args;
  int kist_k = 0;
  double alpha = 0.8627;
  auto* cmd_kist = app.add_subcommand("kist", "spanning tree with >= k internal vertices");
  cmd_kist->add_option("--k", kist_k, "internal vertex target")->required();
  cmd_kist->add_option("--alpha", alpha, "strategy split point");
  add_common(cmd_kist, kist_args, false);

  CommonArgs pre_args;
  std::string pre_out, pre_trace;
  auto* cmd_pre = app.add_subcommand("preprocess", "triangle elimination for subcubic graphs");
  cmd_pre->add_option("--graph", pre_args.graph_path, "graph file")->required();
  cmd_pre->add_option("--out", pre_out, "output weighted graph file (default stdout)");
  cmd_pre->add_option("--trace", pre_trace, "JSON contraction trace file");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "benchmark harness");
  cmd_bench->add_option("--corpus", bench.corpus, "directory of graph files (sweep mode)");
  cmd_bench->add_option("--mode", bench.mode, "sweep | la-hist | rtime");
  cmd_bench->add_option("--csv", bench.csv_path, "CSV output path (default stdout)");
  cmd_bench->add_option("--graph", bench.graph_path, "graph file (la-hist / rtime modes)");
  cmd_bench->add_option("--kmin", bench.kmin, "smallest k (sweep)");
  cmd_bench->add_option("--kmax", bench.kmax, "largest k (sweep)");
  cmd_bench->add_option("--strategies", bench.strategies, "comma-separated strategy list (sweep)");
  cmd_bench->add_option("--seed", bench.seed, "root seed");
  cmd_bench->add_option("--boost", bench.boost, "confidence multiplier");
  cmd_bench->add_option("--threads", bench.threads, "worker threads");
  cmd_bench->add_option("--samples", bench.samples, "bipartition samples (la-hist)");
  cmd_bench->add_option("--k", bench.k, "node count (rtime)");
  cmd_bench->add_option("--l", bench.l, "leaf count (rtime)");
  cmd_bench->add_option("--rmin", bench.rmin, "first label budget (rtime)");
  cmd_bench->add_option("--rmax", bench.rmax, "last label budget (rtime)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_detect->parsed())
      return run_detect_like(detect_args, "detect", detect_k, detect_l, std::nullopt, 0);
    if (cmd_kpath->parsed())
      return run_detect_like(kpath_args, "kpath", kpath_k, 2, std::nullopt, 0);
    if (cmd_ham->parsed()) return run_detect_like(ham_args, "ham", 0, 2, std::nullopt, 0);
    if (cmd_kist->parsed())
      return run_detect_like(kist_args, "kist", 0, 2, kist_k, alpha);
    if (cmd_pre->parsed()) return run_preprocess(pre_args, pre_out, pre_trace);
    if (cmd_bench->parsed()) {
      if (bench.mode == "sweep") return run_bench_sweep(bench);
      if (bench.mode == "la-hist") return run_bench_la_hist(bench);
      if (bench.mode == "rtime") return run_bench_rtime(bench);
      throw std::invalid_argument("unknown bench mode '" + bench.mode + "'");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
