#include "trademap/graph.hpp"

#include <algorithm>
#include <cmath>

#include "trademap/error.hpp"

namespace trademap {
namespace {

// Union-find is overkill at this size; a breadth-first sweep over the dense
// adjacency keeps the output order trivially deterministic.
template <typename IsEdge>
Components components_of(std::size_t n, IsEdge is_edge) {
  Components out;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp{start};
    seen[start] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const std::size_t u = comp[head];
      for (std::size_t v = 0; v < n; ++v)
        if (!seen[v] && v != u && is_edge(u, v)) {
          seen[v] = true;
          comp.push_back(v);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

AffinityMatrix affinity(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  const auto& roster = flow.roster();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (flow(i, i) != 0.0) throw Error(ErrorCode::Domain, "nonzero diagonal flow for " + roster.code(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double wij = flow(i, j);
      const double wji = flow(j, i);
      if (wij < 0.0) throw Error(ErrorCode::Domain, "negative flow " + roster.code(i) + " -> " + roster.code(j));
      if (wji < 0.0) throw Error(ErrorCode::Domain, "negative flow " + roster.code(j) + " -> " + roster.code(i));
      a(i, j) = a(j, i) = wij + wji;
    }
  }
  return {roster, std::move(a)};
}

DegreeVector degrees(const AffinityMatrix& aff) {
  const std::size_t n = aff.values.rows();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += aff.values(i, j);
    d[i] = s;
  }
  return {aff.roster, std::move(d)};
}

LaplacianMatrix normalized_laplacian(const AffinityMatrix& aff) {
  DegreeVector deg = degrees(aff);
  const std::size_t n = deg.degrees.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(deg.degrees[i] > 0.0))
      throw Error(ErrorCode::IsolatedVertex, "country " + aff.roster.code(i) + " has zero total trade");

  Matrix lap(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    lap(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = -aff.values(i, j) / std::sqrt(deg.degrees[i] * deg.degrees[j]);
      lap(i, j) = lap(j, i) = v;
    }
  }
  return {aff.roster, std::move(lap), std::move(deg)};
}

Components connected_components(const AffinityMatrix& aff, double edge_threshold) {
  return components_of(aff.values.rows(),
                       [&](std::size_t u, std::size_t v) { return aff.values(u, v) > edge_threshold; });
}

Components connected_components(const LaplacianMatrix& lap) {
  return components_of(lap.values.rows(), [&](std::size_t u, std::size_t v) { return lap.values(u, v) < 0.0; });
}

std::vector<std::size_t> largest_component(const Components& components) {
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& c : components)
    if (!best || c.size() > best->size()) best = &c;
  return best ? *best : std::vector<std::size_t>{};
}

AffinityMatrix prune_edges(const AffinityMatrix& aff, double edge_threshold) {
  AffinityMatrix out = aff;
  const std::size_t n = out.values.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (out.values(i, j) <= edge_threshold) out.values(i, j) = 0.0;
  return out;
}

std::vector<std::size_t> isolated_vertices(const AffinityMatrix& aff) {
  const auto deg = degrees(aff);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < deg.degrees.size(); ++i)
    if (!(deg.degrees[i] > 0.0)) out.push_back(i);
  return out;
}

}  // namespace trademap
