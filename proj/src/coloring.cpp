#include "treesieve/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace treesieve {

void ProperColoring::validate(const Graph& g) const {
  if (static_cast<int>(color.size()) != g.n)
    throw std::invalid_argument("coloring size does not match vertex count");
  for (int v = 0; v < g.n; ++v)
    if (color[v] < 1 || color[v] > d) throw std::invalid_argument("color out of range 1..d");
  for (auto [u, v] : g.edges)
    if (color[u] == color[v])
      throw std::invalid_argument("improper coloring: edge " + std::to_string(u + 1) + "-" +
                                  std::to_string(v + 1) + " monochromatic");
}

std::vector<std::vector<int>> ProperColoring::classes() const {
  std::vector<std::vector<int>> cls(d);
  for (int v = 0; v < static_cast<int>(color.size()); ++v) cls[color[v] - 1].push_back(v);
  return cls;
}

ProperColoring greedy_coloring(const Graph& g) {
  ProperColoring c;
  c.color.assign(g.n, 0);
  if (g.n == 0) {
    c.d = 0;
    return c;
  }
  std::vector<std::set<int>> neighbor_colors(g.n);
  std::vector<int> uncolored_deg(g.n);
  for (int v = 0; v < g.n; ++v) uncolored_deg[v] = g.degree(v);

  for (int step = 0; step < g.n; ++step) {
    // max saturation, ties by uncolored degree, then lowest index
    int best = -1;
    for (int v = 0; v < g.n; ++v) {
      if (c.color[v]) continue;
      if (best < 0) { best = v; continue; }
      auto key = [&](int u) {
        return std::make_pair(static_cast<int>(neighbor_colors[u].size()), uncolored_deg[u]);
      };
      if (key(v) > key(best)) best = v;
    }
    int col = 1;
    while (neighbor_colors[best].count(col)) ++col;
    c.color[best] = col;
    c.d = std::max(c.d, col);
    for (int w : g.adj[best]) {
      neighbor_colors[w].insert(col);
      --uncolored_deg[w];
    }
  }
  if (c.d == 0) c.d = 1;  // n >= 1, every vertex got a color
  c.validate(g);
  return c;
}

ProperColoring load_coloring(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open coloring file: " + path);
  ProperColoring c;
  int col;
  while (f >> col) {
    if (col < 1) throw ParseError("colors are 1-based");
    c.color.push_back(col);
    c.d = std::max(c.d, col);
  }
  if (static_cast<int>(c.color.size()) != n)
    throw ParseError("coloring file has " + std::to_string(c.color.size()) + " entries, graph has " +
                     std::to_string(n) + " vertices");
  return c;
}

void FractionalColoring::validate(const Graph& g) const {
  if (static_cast<int>(colorset.size()) != g.n)
    throw std::invalid_argument("fractional coloring size does not match vertex count");
  if (a < 1 || b < 1 || b > a) throw std::invalid_argument("need 1 <= b <= a");
  for (const auto& cs : colorset) {
    if (static_cast<int>(cs.size()) != b) throw std::invalid_argument("vertex set is not b colors");
    for (size_t i = 0; i < cs.size(); ++i) {
      if (cs[i] < 1 || cs[i] > a) throw std::invalid_argument("color out of range 1..a");
      if (i && cs[i] == cs[i - 1]) throw std::invalid_argument("repeated color at a vertex");
    }
  }
  for (auto [u, v] : g.edges) {
    std::vector<int> inter;
    std::set_intersection(colorset[u].begin(), colorset[u].end(), colorset[v].begin(),
                          colorset[v].end(), std::back_inserter(inter));
    if (!inter.empty())
      throw std::invalid_argument("adjacent vertices " + std::to_string(u + 1) + "," +
                                  std::to_string(v + 1) + " share a color");
  }
}

FractionalColoring load_fractional_coloring(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open fractional coloring file: " + path);
  FractionalColoring fc;
  if (!(f >> fc.a >> fc.b)) throw ParseError("missing 'a b' header");
  fc.colorset.resize(n);
  for (int v = 0; v < n; ++v) {
    fc.colorset[v].resize(fc.b);
    for (int i = 0; i < fc.b; ++i)
      if (!(f >> fc.colorset[v][i]))
        throw ParseError("fractional coloring truncated at vertex " + std::to_string(v + 1));
    std::sort(fc.colorset[v].begin(), fc.colorset[v].end());
  }
  return fc;
}

void VectorColoring::validate(const Graph& g) const {
  constexpr double kTol = 1e-9;
  if (static_cast<int>(vec.size()) != g.n)
    throw std::invalid_argument("vector coloring size does not match vertex count");
  if (!(value > 1.0)) throw std::invalid_argument("vector coloring value must exceed 1");
  for (int v = 0; v < g.n; ++v) {
    if (static_cast<int>(vec[v].size()) != dim) throw std::invalid_argument("inconsistent dimension");
    double norm2 = 0;
    for (double x : vec[v]) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > kTol)
      throw std::invalid_argument("vector for vertex " + std::to_string(v + 1) + " is not unit length");
  }
  double cap = -1.0 / (value - 1.0) + kTol;
  for (auto [u, v] : g.edges) {
    double dot = std::inner_product(vec[u].begin(), vec[u].end(), vec[v].begin(), 0.0);
    if (dot > cap)
      throw std::invalid_argument("edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                  " violates the vector coloring value");
  }
}

VectorColoring load_vector_coloring(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open vector file: " + path);
  VectorColoring vc;
  int file_n = 0;
  if (!(f >> file_n >> vc.dim >> vc.value)) throw ParseError("missing 'n dim value' header");
  if (file_n != n)
    throw ParseError("vector file is for " + std::to_string(file_n) + " vertices, graph has " +
                     std::to_string(n));
  vc.vec.assign(n, std::vector<double>(vc.dim));
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < vc.dim; ++i)
      if (!(f >> vc.vec[v][i])) throw ParseError("vector file truncated at vertex " + std::to_string(v + 1));
  return vc;
}

VectorColoring simplex_vector_coloring(const ProperColoring& c, int n) {
  int d = std::max(c.d, 2);
  VectorColoring vc;
  vc.dim = d;
  vc.value = d;
  // d corners of a regular simplex centered at the origin
  std::vector<std::vector<double>> corner(d, std::vector<double>(d, 0.0));
  double shift = 1.0 / d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) corner[i][j] = (i == j ? 1.0 : 0.0) - shift;
    double norm = 0;
    for (double x : corner[i]) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : corner[i]) x /= norm;
  }
  vc.vec.resize(n);
  for (int v = 0; v < n; ++v) vc.vec[v] = corner[c.color[v] - 1];
  return vc;
}

std::vector<int> sample_independent_set(const Graph& g, Rng& rng) {
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = g.n - 1; i > 0; --i)
    std::swap(order[i], order[rng.next_below(static_cast<uint64_t>(i) + 1)]);
  std::vector<uint8_t> in_set(g.n, 0);
  std::vector<int> out;
  for (int v : order) {
    bool blocked = false;
    for (int w : g.adj[v])
      if (in_set[w]) { blocked = true; break; }
    if (!blocked) {
      in_set[v] = 1;
      out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Bipartition hyperplane_bipartition(const VectorColoring& vc, Rng& rng) {
  std::vector<double> h(vc.dim);
  double norm = 0;
  do {
    norm = 0;
    for (double& x : h) {
      x = rng.next_gaussian();
      norm += x * x;
    }
  } while (norm == 0.0);
  Bipartition p;
  p.side.resize(vc.vec.size());
  for (size_t v = 0; v < vc.vec.size(); ++v) {
    double dot = std::inner_product(vc.vec[v].begin(), vc.vec[v].end(), h.begin(), 0.0);
    p.side[v] = dot >= 0 ? 1 : 2;
  }
  return p;
}

}  // namespace treesieve
