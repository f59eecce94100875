#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trademap/graph.hpp"
#include "trademap/ingest.hpp"
#include "trademap/matrix.hpp"
#include "trademap/roster.hpp"
#include "trademap/spectral.hpp"

namespace trademap {

inline constexpr double kTrivialTolerance = 1e-9;
inline constexpr double kDegeneracyGap = 1e-6;

// Per-country coordinates taken from the eigenvectors of the smallest
// nontrivial Laplacian eigenvalues. Column j of `coordinates` is the j-th
// selected eigenvector.
//
// Embeddings loaded from a coordinates file have no spectrum attached:
// `eigenvalues_used` is empty and `spectral_gap` is NaN.
struct Embedding {
  CountryRoster roster;
  Matrix coordinates;
  std::vector<double> eigenvalues_used;
  double spectral_gap = 0.0;
  bool degeneracy_flag = false;
  std::size_t trivial_count = 0;

  std::size_t size() const noexcept { return coordinates.rows(); }
  std::size_t dims() const noexcept { return coordinates.cols(); }
};

struct NontrivialSelection {
  std::vector<std::size_t> indices;
  std::size_t trivial_count = 0;
};

// Indices of eigenvalues above `trivial_tol`, ascending. Throws
// InsufficientSpectrum when fewer than `k` remain.
NontrivialSelection nontrivial_indices(std::span<const double> eigenvalues, std::size_t k,
                                       double trivial_tol = kTrivialTolerance);

struct EmbedOptions {
  std::size_t k = 2;
  bool require_connected = true;
  double trivial_tol = kTrivialTolerance;
};

Embedding embed(const LaplacianMatrix& lap, const Spectrum& spectrum, const EmbedOptions& options = {});
Embedding embed(const LaplacianMatrix& lap, const EmbedOptions& options = {});

// affinity -> degrees -> normalized_laplacian -> symmetric_eigen -> embed.
Embedding compose_map(const FlowMatrix& flow, const EmbedOptions& options = {});

}  // namespace trademap
