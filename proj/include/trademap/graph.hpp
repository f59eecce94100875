#pragma once

#include <cstddef>
#include <vector>

#include "trademap/ingest.hpp"
#include "trademap/matrix.hpp"
#include "trademap/roster.hpp"

namespace trademap {

// Symmetric total-trade matrix A = W + W^T.
struct AffinityMatrix {
  CountryRoster roster;
  Matrix values;
};

struct DegreeVector {
  CountryRoster roster;
  std::vector<double> degrees;
};

// N = I - D^{-1/2} A D^{-1/2}.
struct LaplacianMatrix {
  CountryRoster roster;
  Matrix values;
  DegreeVector degrees;
};

using Components = std::vector<std::vector<std::size_t>>;

AffinityMatrix affinity(const FlowMatrix& flow);

DegreeVector degrees(const AffinityMatrix& aff);

LaplacianMatrix normalized_laplacian(const AffinityMatrix& aff);

// Components of the graph whose edges are the pairs with weight above the
// threshold. Each component lists indices ascending; components are ordered
// by their lowest index.
Components connected_components(const AffinityMatrix& aff, double edge_threshold = 0.0);

// Same partition read off the Laplacian sparsity pattern (N_ij < 0 exactly
// when a_ij > 0).
Components connected_components(const LaplacianMatrix& lap);

// Largest component; ties go to the one containing the lowest index.
std::vector<std::size_t> largest_component(const Components& components);

// Copy of `aff` with every weight at or below the threshold set to zero.
AffinityMatrix prune_edges(const AffinityMatrix& aff, double edge_threshold);

std::vector<std::size_t> isolated_vertices(const AffinityMatrix& aff);

}  // namespace trademap
