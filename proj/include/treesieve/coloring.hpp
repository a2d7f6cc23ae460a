#ifndef TREESIEVE_COLORING_HPP_
#define TREESIEVE_COLORING_HPP_

#include <string>
#include <vector>

#include "treesieve/graph.hpp"

namespace treesieve {

struct ProperColoring {
  std::vector<int> color;  // 1..d per vertex
  int d = 0;

  // Throws std::invalid_argument on a monochromatic edge or bad range.
  void validate(const Graph& g) const;
  std::vector<std::vector<int>> classes() const;  // color -> vertices
};

// DSATUR heuristic; always proper, at most max_degree+1 colors.
ProperColoring greedy_coloring(const Graph& g);
ProperColoring load_coloring(const std::string& path, int n);

struct FractionalColoring {
  int a = 0, b = 0;
  std::vector<std::vector<int>> colorset;  // b-element sorted subsets of 1..a

  void validate(const Graph& g) const;  // adjacent sets disjoint
};

FractionalColoring load_fractional_coloring(const std::string& path, int n);

struct VectorColoring {
  int dim = 0;
  double value = 0.0;  // > 1
  std::vector<std::vector<double>> vec;  // unit vectors, one per vertex

  void validate(const Graph& g) const;  // norms and edge dot products
};

VectorColoring load_vector_coloring(const std::string& path, int n);

// Build the simplex embedding of a proper coloring: color classes map to
// d unit vectors with pairwise dot -1/(d-1), a vector coloring of value d.
VectorColoring simplex_vector_coloring(const ProperColoring& c, int n);

// Hatami-Zhu sampler: random vertex order, include a vertex iff no
// earlier-included neighbor. Output is a maximal independent set, sorted.
std::vector<int> sample_independent_set(const Graph& g, Rng& rng);

// Side 1 iff vec(u) . h >= 0 for a uniform unit normal h.
Bipartition hyperplane_bipartition(const VectorColoring& vc, Rng& rng);

}  // namespace treesieve

#endif  // TREESIEVE_COLORING_HPP_
