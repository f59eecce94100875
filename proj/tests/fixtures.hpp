#pragma once

#include <string>
#include <vector>

#include "trademap/ingest.hpp"
#include "trademap/matrix.hpp"
#include "trademap/rng.hpp"
#include "trademap/synth.hpp"

namespace fixture {

using trademap::CountryRoster;
using trademap::FlowMatrix;
using trademap::Matrix;

inline FlowMatrix flow(const std::vector<std::string>& codes, const std::vector<std::vector<double>>& rows) {
  return FlowMatrix(CountryRoster(codes), Matrix::from_rows(rows));
}

// Three countries whose pairwise totals are A-B = 1, B-C = 2, C-A = 0.01,
// entered as a directed cycle of exports.
inline FlowMatrix three_country() {
  return flow({"A", "B", "C"}, {{0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}, {0.01, 0.0, 0.0}});
}

// Two cliques with within-weights in [1, 2] and between-weights in
// [0, ratio]. Vertices [0, first_size) form the first clique.
inline FlowMatrix two_cliques(trademap::Rng& rng, std::size_t n, std::size_t first_size, double ratio) {
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (i < first_size) == (j < first_size);
      w(i, j) = same ? rng.uniform(1.0, 2.0) : ratio * rng.uniform();
    }
  return FlowMatrix(CountryRoster(trademap::synthetic_codes(n)), w);
}

// Random complete graph with positive weights spanning several orders of
// magnitude.
inline FlowMatrix random_positive(trademap::Rng& rng, std::size_t n) {
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) w(i, j) = std::exp(rng.uniform(-3.0, 3.0));
  return FlowMatrix(CountryRoster(trademap::synthetic_codes(n)), w);
}

}  // namespace fixture
