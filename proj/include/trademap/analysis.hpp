#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "trademap/embedding.hpp"
#include "trademap/matrix.hpp"
#include "trademap/roster.hpp"

namespace trademap {

struct DistanceReport {
  CountryRoster roster;
  Matrix distances;
};

struct Neighbor {
  std::string code;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Bipartition {
  std::vector<std::string> positive_set;
  std::vector<std::string> negative_set;
  std::vector<std::string> boundary;  // |first coordinate| <= boundary_tolerance
  double boundary_tolerance = 0.0;
};

DistanceReport pairwise_distances(const Embedding& emb);

// The m countries closest to `code`, ascending by distance, ties by roster
// order.
std::vector<Neighbor> nearest_neighbors(const Embedding& emb, const std::string& code, std::size_t m);

// Splits the roster by the sign of the first coordinate. Countries inside
// [-zero_band, zero_band] go to the side their sign points to (zero counts
// as positive) and are listed in `boundary`. A first coordinate without both
// strictly positive and strictly negative entries cannot come from a
// nontrivial eigenvector and raises ErrorCode::Invariant.
Bipartition bipartition(const Embedding& emb, double zero_band = 0.0);

struct ProcrustesOptions {
  bool allow_reflection = true;
  bool allow_scaling = false;
};

struct ProcrustesResult {
  Embedding aligned;
  Matrix transform;  // k x k orthogonal; aligned = scale * target * transform
  double scale = 1.0;
  double disparity = 0.0;
};

ProcrustesResult procrustes_align(const Embedding& reference, const Embedding& target,
                                  const ProcrustesOptions& options = {});

}  // namespace trademap
