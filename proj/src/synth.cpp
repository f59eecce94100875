#include "trademap/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "trademap/analysis.hpp"
#include "trademap/csv.hpp"
#include "trademap/error.hpp"
#include "trademap/rng.hpp"

namespace trademap {
namespace {

constexpr std::uint64_t kNoiseStream = 0x9E3779B97F4A7C15ULL;

double planted_distance(const Matrix& p, std::size_t i, std::size_t j) {
  return std::hypot(p(i, 0) - p(j, 0), p(i, 1) - p(j, 1));
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

void validate(const SyntheticScenario& s) {
  const std::size_t n = s.size();
  if (s.positions.cols() != 2) throw Error(ErrorCode::Dimension, "scenario positions must be n x 2");
  if (s.masses.size() != n || s.labels.size() != n)
    throw Error(ErrorCode::SizeMismatch, "scenario masses/labels do not match the number of points");
  if (!(s.gravity_constant > 0.0) || !std::isfinite(s.gravity_constant))
    throw Error(ErrorCode::InvalidArgument, "gravity constant must be positive");
  for (std::size_t i = 0; i < n; ++i)
    if (!(s.masses[i] > 0.0) || !std::isfinite(s.masses[i]))
      throw Error(ErrorCode::InvalidArgument, "mass of point " + std::to_string(i) + " must be positive");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(planted_distance(s.positions, i, j) > 0.0))
        throw Error(ErrorCode::DegenerateGeometry,
                    "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

std::vector<std::string> synthetic_codes(std::size_t n) {
  const std::size_t width = std::max<std::size_t>(3, std::to_string(n == 0 ? 0 : n - 1).size());
  std::vector<std::string> codes;
  codes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    codes.push_back("S" + std::string(width - digits.size(), '0') + digits);
  }
  return codes;
}

FlowMatrix gravity_flows(const SyntheticScenario& scenario, double noise_level) {
  validate(scenario);
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level))
    throw Error(ErrorCode::InvalidArgument, "noise level must be nonnegative");
  const std::size_t n = scenario.size();
  Rng rng(scenario.seed ^ kNoiseStream);
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double f = scenario.gravity_constant * scenario.masses[i] * scenario.masses[j] /
                 planted_distance(scenario.positions, i, j);
      if (noise_level > 0.0) f *= std::exp(noise_level * rng.normal());
      w(i, j) = w(j, i) = 0.5 * f;
    }
  return FlowMatrix(CountryRoster(synthetic_codes(n)), std::move(w));
}

SyntheticScenario planted_cluster_scenario(std::uint64_t seed, std::size_t n_per_cluster,
                                           const std::vector<Point2>& centers, double spread,
                                           MassRange mass_range) {
  if (centers.empty()) throw Error(ErrorCode::InvalidArgument, "at least one cluster center is required");
  if (n_per_cluster == 0) throw Error(ErrorCode::InvalidArgument, "clusters need at least one point");
  if (!(spread > 0.0)) throw Error(ErrorCode::InvalidArgument, "spread must be positive");
  if (!(mass_range.lo > 0.0) || !(mass_range.hi >= mass_range.lo))
    throw Error(ErrorCode::InvalidArgument, "mass range must satisfy 0 < lo <= hi");
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if (centers[a].x == centers[b].x && centers[a].y == centers[b].y)
        throw Error(ErrorCode::DegenerateGeometry, "cluster centers " + std::to_string(a) + " and " +
                                                       std::to_string(b) + " coincide");

  SyntheticScenario s;
  s.seed = seed;
  s.positions = Matrix(centers.size() * n_per_cluster, 2);
  Rng rng(seed);
  std::size_t row = 0;
  for (std::size_t c = 0; c < centers.size(); ++c)
    for (std::size_t p = 0; p < n_per_cluster; ++p, ++row) {
      const double r = spread * std::sqrt(rng.uniform());
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      s.positions(row, 0) = centers[c].x + r * std::cos(theta);
      s.positions(row, 1) = centers[c].y + r * std::sin(theta);
      s.masses.push_back(rng.uniform(mass_range.lo, mass_range.hi));
      s.labels.push_back(static_cast<int>(c));
    }
  return s;
}

std::vector<std::string> scenario_warnings(const std::vector<Point2>& centers, double spread) {
  std::vector<std::string> out;
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      min_sep = std::min(min_sep, std::hypot(centers[a].x - centers[b].x, centers[a].y - centers[b].y));
  if (std::isfinite(min_sep) && spread >= 0.5 * min_sep) {
    std::ostringstream msg;
    msg << "spread " << spread << " is not below half the minimum center separation " << min_sep
        << "; clusters may overlap";
    out.push_back(msg.str());
  }
  return out;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "spearman inputs differ in length");
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0.0 || vb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return cov / std::sqrt(va * vb);
}

RecoveryScore recovery_score(const SyntheticScenario& scenario, const Embedding& emb) {
  const std::size_t n = scenario.size();
  if (emb.size() != n)
    throw Error(ErrorCode::SizeMismatch, "embedding has " + std::to_string(emb.size()) + " points, scenario " +
                                             std::to_string(n));
  RecoveryScore score;

  const std::set<int> distinct(scenario.labels.begin(), scenario.labels.end());
  if (distinct.size() == 2) {
    const Bipartition part = bipartition(emb);
    std::vector<bool> positive(n, false);
    for (const auto& code : part.positive_set) positive[*emb.roster.index_of(code)] = true;
    const int first = *distinct.begin();
    std::size_t agree = 0;
    for (std::size_t i = 0; i < n; ++i) agree += (scenario.labels[i] == first) == positive[i];
    score.partition_accuracy = static_cast<double>(std::max(agree, n - agree)) / static_cast<double>(n);
  }

  const DistanceReport embedded = pairwise_distances(emb);
  std::vector<double> planted, recovered;
  planted.reserve(n * (n - 1) / 2);
  recovered.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      planted.push_back(planted_distance(scenario.positions, i, j));
      recovered.push_back(embedded.distances(i, j));
    }
  score.distance_rank_correlation = spearman(planted, recovered);
  return score;
}

void write_scenario_csv(std::ostream& out, const SyntheticScenario& s) {
  out << "# seed=" << s.seed << '\n';
  out << "# gravity_constant=" << csv::format_double(s.gravity_constant) << '\n';
  out << "x,y,mass,label\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << csv::format_double(s.positions(i, 0)) << ',' << csv::format_double(s.positions(i, 1)) << ','
        << csv::format_double(s.masses[i]) << ',' << s.labels[i] << '\n';
}

SyntheticScenario read_scenario_csv(std::istream& in) {
  SyntheticScenario s;
  std::vector<std::array<double, 3>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto number = [&](const std::string& field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != field.size())
      throw Error(ErrorCode::Parse, "row " + std::to_string(line_no) + ": bad number '" + field + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = csv::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto body = csv::trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key(csv::trim(body.substr(0, eq)));
      const std::string value(csv::trim(body.substr(eq + 1)));
      if (key == "seed") {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
        if (ec != std::errc{} || ptr != value.data() + value.size())
          throw Error(ErrorCode::Parse, "row " + std::to_string(line_no) + ": bad seed '" + value + "'");
        s.seed = seed;
      }
      if (key == "gravity_constant") s.gravity_constant = number(value);
      continue;
    }
    const auto fields = csv::split_line(t);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"x", "y", "mass", "label"})
        throw Error(ErrorCode::Schema, "scenario header must be x,y,mass,label");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4)
      throw Error(ErrorCode::Parse, "row " + std::to_string(line_no) + ": expected 4 fields");
    rows.push_back({number(fields[0]), number(fields[1]), number(fields[2])});
    s.labels.push_back(static_cast<int>(number(fields[3])));
  }
  s.positions = Matrix(rows.size(), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.positions(i, 0) = rows[i][0];
    s.positions(i, 1) = rows[i][1];
    s.masses.push_back(rows[i][2]);
  }
  validate(s);
  return s;
}

}  // namespace trademap
