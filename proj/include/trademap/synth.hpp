#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trademap/embedding.hpp"
#include "trademap/ingest.hpp"
#include "trademap/matrix.hpp"

namespace trademap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct SyntheticScenario {
  Matrix positions;  // n x 2
  std::vector<double> masses;
  double gravity_constant = 1.0;
  std::vector<int> labels;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return positions.rows(); }
};

// Throws InvalidArgument / DegenerateGeometry on nonpositive masses, bad
// shapes or coincident points.
void validate(const SyntheticScenario& scenario);

// Synthetic roster codes S000, S001, ...; zero padded so canonical order is
// index order.
std::vector<std::string> synthetic_codes(std::size_t n);

// W[i][j] = W[j][i] = G M_i M_j / (2 D_ij), each unordered pair optionally
// scaled by exp(noise_level * z) with z drawn from a stream seeded by the
// scenario seed.
FlowMatrix gravity_flows(const SyntheticScenario& scenario, double noise_level = 0.0);

struct MassRange {
  double lo = 1.0;
  double hi = 10.0;
};

// Points uniform in a disc of radius `spread` around each center, masses
// uniform in the range, labels = cluster index.
SyntheticScenario planted_cluster_scenario(std::uint64_t seed, std::size_t n_per_cluster,
                                           const std::vector<Point2>& centers, double spread,
                                           MassRange mass_range = {});

// Human-readable warnings about a scenario configuration (spread at or above
// half the smallest center separation).
std::vector<std::string> scenario_warnings(const std::vector<Point2>& centers, double spread);

struct RecoveryScore {
  std::optional<double> partition_accuracy;  // only for two-cluster scenarios
  double distance_rank_correlation = 0.0;
};

RecoveryScore recovery_score(const SyntheticScenario& scenario, const Embedding& emb);

// Spearman correlation with average ranks for ties. NaN when either input is
// constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

void write_scenario_csv(std::ostream& out, const SyntheticScenario& scenario);
SyntheticScenario read_scenario_csv(std::istream& in);

}  // namespace trademap
