#include "trademap/embedding.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "trademap/error.hpp"

namespace trademap {
namespace {

std::string describe(const Components& components, const CountryRoster& roster) {
  std::string out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    out += c == 0 ? "{" : " {";
    for (std::size_t i = 0; i < components[c].size(); ++i) {
      if (i) out += ",";
      out += roster.code(components[c][i]);
    }
    out += "}";
  }
  return out;
}

}  // namespace

NontrivialSelection nontrivial_indices(std::span<const double> eigenvalues, std::size_t k, double trivial_tol) {
  NontrivialSelection sel;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > trivial_tol)
      sel.indices.push_back(i);
    else
      ++sel.trivial_count;
  }
  if (sel.indices.size() < k)
    throw Error(ErrorCode::InsufficientSpectrum,
                "requested " + std::to_string(k) + " nontrivial eigenvalues but only " +
                    std::to_string(sel.indices.size()) + " exceed " + std::to_string(trivial_tol));
  return sel;
}

Embedding embed(const LaplacianMatrix& lap, const Spectrum& spectrum, const EmbedOptions& options) {
  if (options.k == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
  const std::size_t n = lap.values.rows();
  if (spectrum.eigenvalues.size() != n || spectrum.eigenvectors.rows() != n)
    throw Error(ErrorCode::SizeMismatch, "spectrum does not match Laplacian size");

  if (options.require_connected) {
    const Components components = connected_components(lap);
    if (components.size() > 1)
      throw Error(ErrorCode::Connectivity, "trade graph has " + std::to_string(components.size()) +
                                               " components: " + describe(components, lap.roster));
  }

  const NontrivialSelection sel = nontrivial_indices(spectrum.eigenvalues, options.k, options.trivial_tol);

  Embedding emb;
  emb.roster = lap.roster;
  emb.coordinates = Matrix(n, options.k);
  emb.trivial_count = sel.trivial_count;
  for (std::size_t j = 0; j < options.k; ++j) {
    const std::size_t col = sel.indices[j];
    emb.eigenvalues_used.push_back(spectrum.eigenvalues[col]);
    for (std::size_t i = 0; i < n; ++i) emb.coordinates(i, j) = spectrum.eigenvectors(i, col);
  }

  const double last = emb.eigenvalues_used.back();
  emb.spectral_gap = sel.indices.size() > options.k ? spectrum.eigenvalues[sel.indices[options.k]] - last
                                                    : std::numeric_limits<double>::infinity();
  emb.degeneracy_flag = emb.spectral_gap < kDegeneracyGap;
  for (std::size_t j = 1; j < options.k; ++j)
    if (emb.eigenvalues_used[j] - emb.eigenvalues_used[j - 1] < kDegeneracyGap) emb.degeneracy_flag = true;
  return emb;
}

Embedding embed(const LaplacianMatrix& lap, const EmbedOptions& options) {
  return embed(lap, symmetric_eigen(lap.values), options);
}

Embedding compose_map(const FlowMatrix& flow, const EmbedOptions& options) {
  const AffinityMatrix aff = affinity(flow);
  const LaplacianMatrix lap = normalized_laplacian(aff);
  const Spectrum spectrum = symmetric_eigen(lap.values);
  return embed(lap, spectrum, options);
}

}  // namespace trademap
