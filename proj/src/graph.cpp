#include "treesieve/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace treesieve {

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edge_list) {
  Graph g;
  g.n = n;
  for (auto& [u, v] : edge_list) {
    if (u == v) throw std::invalid_argument("loop edge");
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("vertex id out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  g.edges = std::move(edge_list);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& a : adj) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges.begin());
}

bool Graph::is_connected() const {
  if (n <= 1) return true;
  std::vector<uint8_t> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

std::vector<std::array<int, 3>> Graph::triangles() const {
  std::vector<std::array<int, 3>> out;
  for (auto [u, v] : edges) {
    for (int w : adj[u]) {
      if (w <= v) continue;
      if (has_edge(v, w)) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

[[noreturn]] void fail_line(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

struct RawInput {
  int declared_n = -1;
  std::vector<std::pair<int, int>> edges;       // 1-based as read
  std::vector<std::pair<int, int64_t>> weights; // (vertex 1-based, weight)
  std::vector<int> edge_lines, weight_lines;
  int max_id = 0;
};

Graph finish(const RawInput& in) {
  // a declared count is binding; otherwise the largest id seen wins
  int n = in.declared_n >= 0 ? in.declared_n : in.max_id;
  if (n < 0) n = 0;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(in.edges.size());
  for (size_t i = 0; i < in.edges.size(); ++i) {
    auto [u, v] = in.edges[i];
    if (u == v) fail_line(in.edge_lines[i], "loop edge " + std::to_string(u) + " " + std::to_string(v));
    if (u < 1 || v < 1 || u > n || v > n)
      fail_line(in.edge_lines[i], "vertex id out of range 1.." + std::to_string(n));
    edges.emplace_back(u - 1, v - 1);
  }
  Graph g = Graph::from_edges(n, std::move(edges));
  if (!in.weights.empty()) {
    g.weights.assign(n, 1);
    for (size_t i = 0; i < in.weights.size(); ++i) {
      auto [v, w] = in.weights[i];
      if (v < 1 || v > n) fail_line(in.weight_lines[i], "weight for vertex out of range");
      if (w < 1) fail_line(in.weight_lines[i], "vertex weight must be >= 1");
      g.weights[v - 1] = w;
    }
  }
  return g;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  // DIMACS if any significant line starts with "p" or "e".
  bool dimacs = false;
  {
    std::istringstream probe{std::string(text)};
    std::string line;
    while (std::getline(probe, line)) {
      std::istringstream ls(line);
      std::string tok;
      if (!(ls >> tok)) continue;
      if (tok == "c" || tok == "#") continue;
      dimacs = (tok == "p" || tok == "e");
      break;
    }
  }

  RawInput in;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (dimacs) {
      if (tok == "c") continue;
      if (tok == "p") {
        std::string kind;
        int n = 0, m = 0;
        if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col"))
          fail_line(line_no, "malformed DIMACS problem line");
        if (n < 0) fail_line(line_no, "negative vertex count");
        in.declared_n = n;
        saw_header = true;
        continue;
      }
      if (tok == "e") {
        int u, v;
        if (!(ls >> u >> v)) fail_line(line_no, "malformed edge line");
        if (!saw_header) fail_line(line_no, "edge before DIMACS header");
        in.edges.emplace_back(u, v);
        in.edge_lines.push_back(line_no);
        in.max_id = std::max({in.max_id, u, v});
        continue;
      }
      fail_line(line_no, "unknown DIMACS directive '" + tok + "'");
    }

    if (tok == "w") {
      int v;
      int64_t w;
      if (!(ls >> v >> w)) fail_line(line_no, "malformed weight line");
      in.weights.emplace_back(v, w);
      in.weight_lines.push_back(line_no);
      in.max_id = std::max(in.max_id, v);
      continue;
    }

    int u;
    try {
      size_t pos = 0;
      u = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("");
    } catch (...) {
      fail_line(line_no, "expected integer, got '" + tok + "'");
    }
    int v;
    if (ls >> v) {
      std::string extra;
      if (ls >> extra) fail_line(line_no, "trailing tokens after edge");
      in.edges.emplace_back(u, v);
      in.edge_lines.push_back(line_no);
      in.max_id = std::max({in.max_id, u, v});
    } else {
      ls.clear();
      std::string extra;
      if (ls >> extra) fail_line(line_no, "expected integer, got '" + extra + "'");
      // single integer: vertex count
      if (in.declared_n >= 0 || !in.edges.empty() || !in.weights.empty())
        fail_line(line_no, "stray vertex-count line");
      if (u < 0) fail_line(line_no, "negative vertex count");
      in.declared_n = u;
    }
  }
  return finish(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_graph(buf.str());
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  os << g.n << "\n";
  if (g.has_weights()) {
    for (int v = 0; v < g.n; ++v)
      if (g.weights[v] != 1) os << "w " << (v + 1) << " " << g.weights[v] << "\n";
  }
  for (auto [u, v] : g.edges) os << (u + 1) << " " << (v + 1) << "\n";
  return os.str();
}

Bipartition Bipartition::uniform_random(int n, Rng& rng) {
  Bipartition p;
  p.side.resize(n);
  for (int v = 0; v < n; ++v) p.side[v] = rng.next_bool() ? 1 : 2;
  return p;
}

Bipartition load_bipartition(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open partition file: " + path);
  Bipartition p;
  int s, line_no = 0;
  while (f >> s) {
    ++line_no;
    if (s != 1 && s != 2) fail_line(line_no, "partition side must be 1 or 2");
    p.side.push_back(static_cast<uint8_t>(s));
  }
  if (p.n() != n)
    throw ParseError("partition file has " + std::to_string(p.n()) + " entries, graph has " +
                     std::to_string(n) + " vertices");
  return p;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& s) {
  std::vector<int> orig = s;
  std::sort(orig.begin(), orig.end());
  if (std::adjacent_find(orig.begin(), orig.end()) != orig.end())
    throw std::invalid_argument("induced_subgraph: duplicate vertex id");
  std::vector<int> newid(g.n, -1);
  for (size_t i = 0; i < orig.size(); ++i) {
    if (orig[i] < 0 || orig[i] >= g.n) throw std::invalid_argument("induced_subgraph: id out of range");
    newid[orig[i]] = static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges)
    if (newid[u] >= 0 && newid[v] >= 0) edges.emplace_back(newid[u], newid[v]);
  InducedSubgraph out{Graph::from_edges(static_cast<int>(orig.size()), std::move(edges)), orig};
  if (g.has_weights()) {
    out.graph.weights.resize(orig.size());
    for (size_t i = 0; i < orig.size(); ++i) out.graph.weights[i] = g.weights[orig[i]];
  }
  return out;
}

}  // namespace treesieve
