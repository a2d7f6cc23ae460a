#ifndef TREESIEVE_MATCHING_HPP_
#define TREESIEVE_MATCHING_HPP_

#include "treesieve/graph.hpp"
#include "treesieve/rng.hpp"

namespace treesieve {

// Maximum matching size estimated as rank(Tutte matrix at a random
// point)/2 over GF(2^64). One-sided: never exceeds the true size, and
// matches it except with probability <= n/2^64 per call.
int matching_size(const Graph& g, Rng& rng);

}  // namespace treesieve

#endif  // TREESIEVE_MATCHING_HPP_
