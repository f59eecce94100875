#pragma once

// End-to-end checks shared by the unit tests and the acceptance binary. Each
// returns a verdict plus a one-line summary of what was measured.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trademap/analysis.hpp"
#include "trademap/embedding.hpp"
#include "trademap/graph.hpp"
#include "trademap/ingest.hpp"
#include "trademap/io.hpp"
#include "trademap/rng.hpp"
#include "trademap/spectral.hpp"
#include "trademap/synth.hpp"

namespace suite {

using namespace trademap;

struct Outcome {
  bool pass = true;
  std::string detail;
};

inline std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline double orthonormality_error(const Matrix& v) {
  const Matrix g = v.transposed() * v;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

// max_k ||S v_k - lambda_k v_k||_inf recomputed from scratch.
inline double residual(const Matrix& s, const Spectrum& sp) {
  double worst = 0.0;
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    const auto v = sp.eigenvectors.column(k);
    const auto sv = s * v;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(sv[i] - sp.eigenvalues[k] * v[i]));
  }
  return worst;
}

// Random symmetric matrices with n = 2..50 and magnitudes over ten orders.
inline Outcome eigensolver(int seeds = 100) {
  Stopwatch clock;
  Outcome out;
  double worst_res = 0.0, worst_orth = 0.0, worst_trace = 0.0, worst_charpoly = 0.0;
  int solves = 0;
  auto check = [&](const Matrix& s) {
    const std::size_t n = s.rows();
    const Spectrum sp = symmetric_eigen(s);
    const double smax = s.max_abs();
    ++solves;
    const double res = residual(s, sp) / std::max(1.0, smax);
    const double orth = orthonormality_error(sp.eigenvectors);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += s(i, i);
    const double tr = std::abs(std::accumulate(sp.eigenvalues.begin(), sp.eigenvalues.end(), 0.0) - trace) /
                      (static_cast<double>(n) * smax);
    worst_res = std::max(worst_res, res);
    worst_orth = std::max(worst_orth, orth);
    worst_trace = std::max(worst_trace, tr);
    if (res > 1e-8 || orth > 1e-10 || tr > 1e-8) out.pass = false;
    if (!std::is_sorted(sp.eigenvalues.begin(), sp.eigenvalues.end())) out.pass = false;
    if (n <= 4) {
      const auto roots = oracle::charpoly_eigenvalues(s);
      for (std::size_t k = 0; k < n; ++k) {
        const double err = std::abs(roots[k] - sp.eigenvalues[k]);
        worst_charpoly = std::max(worst_charpoly, err);
        if (err > 1e-9) out.pass = false;
      }
    }
  };
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    const std::size_t n = 2 + static_cast<std::size_t>(seed) % 49;
    check(oracle::random_symmetric(rng, n, std::exp(rng.uniform(-5.0, 5.0))));
    check(oracle::random_symmetric(rng, 2 + rng.next() % 3));
  }
  const double t = clock.seconds();
  if (t > 10.0) out.pass = false;
  out.detail = fmt("%d solves, residual %.2e, orthonormality %.2e, trace %.2e, charpoly %.2e, %.2fs", solves,
                   worst_res, worst_orth, worst_trace, worst_charpoly, t);
  return out;
}

// Connected graph: random spanning tree plus each remaining edge with
// probability `density`; positive weights over several orders of magnitude.
inline FlowMatrix random_connected(Rng& rng, std::size_t n, double density) {
  Matrix w(n, n);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = rng.next() % i;
    w(i, j) = std::exp(rng.uniform(-3.0, 3.0));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && w(i, j) == 0.0 && w(j, i) == 0.0 && rng.uniform() < density)
        w(i, j) = std::exp(rng.uniform(-3.0, 3.0));
  return FlowMatrix(CountryRoster(synthetic_codes(n)), w);
}

inline std::vector<double> unit_sqrt_degrees(const LaplacianMatrix& lap) {
  std::vector<double> r;
  double norm = 0.0;
  for (double d : lap.degrees.degrees) norm += d;
  for (double d : lap.degrees.degrees) r.push_back(std::sqrt(d / norm));
  return r;
}

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

inline Outcome laplacian_bounds(int graphs = 100) {
  Stopwatch clock;
  Outcome out;
  double lo = INFINITY, hi = -INFINITY, worst_smallest = 0.0, worst_cos = 1.0;
  for (int g = 0; g < graphs; ++g) {
    Rng rng(1000 + static_cast<std::uint64_t>(g));
    const std::size_t n = 2 + rng.next() % 49;
    const auto lap = normalized_laplacian(affinity(random_connected(rng, n, rng.uniform())));
    const Spectrum sp = symmetric_eigen(lap.values);
    lo = std::min(lo, sp.eigenvalues.front());
    hi = std::max(hi, sp.eigenvalues.back());
    worst_smallest = std::max(worst_smallest, sp.eigenvalues.front());
    const double c = cosine(sp.eigenvectors.column(0), unit_sqrt_degrees(lap));
    worst_cos = std::min(worst_cos, c);
    if (sp.eigenvalues.front() < -1e-9 || sp.eigenvalues.back() > 2.0 + 1e-9) out.pass = false;
    if (sp.eigenvalues.front() > 1e-10 || c < 1.0 - 1e-10) out.pass = false;
  }
  const double t = clock.seconds();
  if (t > 10.0) out.pass = false;
  out.detail = fmt("%d graphs, spectrum in [%.3e, %.15f], smallest <= %.2e, cosine >= 1 - %.2e, %.2fs", graphs, lo,
                   hi, worst_smallest, 1.0 - worst_cos, t);
  return out;
}

inline std::string coordinates_bytes(const Embedding& emb) {
  std::ostringstream s;
  write_coordinates_csv(s, emb);
  return s.str();
}

// Same graph with country i relabeled to position n - 1 - i.
inline FlowMatrix reversed_roster(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(n - 1 - i, n - 1 - j) = flow(i, j);
  return FlowMatrix(CountryRoster(synthetic_codes(n)), w);
}

inline Outcome invariance(int instances = 100) {
  Outcome out;
  double worst_scale = 0.0, worst_perm = 0.0, worst_cos = 0.0;
  bool bytes_equal = true;
  for (int g = 0; g < instances; ++g) {
    Rng rng(5000 + static_cast<std::uint64_t>(g));
    const std::size_t n = 3 + rng.next() % 48;
    const FlowMatrix flow = g % 2 == 0 ? fixture::random_positive(rng, n)
                                       : fixture::two_cliques(rng, std::max<std::size_t>(n, 6), std::max<std::size_t>(n, 6) / 2, 0.05);
    const Embedding base = compose_map(flow);

    for (double c : {1e-6, 1.0, 1e6}) {
      const Embedding e = compose_map(flow.scaled(c));
      for (std::size_t i = 0; i < base.coordinates.rows(); ++i)
        for (std::size_t j = 0; j < base.coordinates.cols(); ++j)
          worst_scale = std::max(worst_scale, std::abs(e.coordinates(i, j) - base.coordinates(i, j)));
    }

    const std::size_t m = base.size();
    const Embedding rev = compose_map(reversed_roster(flow));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < base.dims(); ++j)
        worst_perm = std::max(worst_perm, std::abs(rev.coordinates(m - 1 - i, j) - base.coordinates(i, j)));

    const std::string first = coordinates_bytes(base);
    std::string threaded;
    std::thread([&] { threaded = coordinates_bytes(compose_map(flow)); }).join();
    bytes_equal = bytes_equal && first == coordinates_bytes(compose_map(flow)) && first == threaded;

    const auto root = unit_sqrt_degrees(normalized_laplacian(affinity(flow)));
    for (std::size_t j = 0; j < base.dims(); ++j)
      worst_cos = std::max(worst_cos, std::abs(cosine(base.coordinates.column(j), root)));
  }
  out.pass = worst_scale <= 1e-10 && worst_perm <= 1e-10 && bytes_equal && worst_cos < 1e-5;
  out.detail = fmt("%d graphs, scale %.2e, permutation %.2e, deterministic bytes %s, trivial cosine %.2e", instances,
                   worst_scale, worst_perm, bytes_equal ? "yes" : "no", worst_cos);
  return out;
}

// A-B = 1, B-C = 2, A-C = 0.01. Ordering is asserted on the first
// coordinate; the 2-D distances are reported alongside.
inline Outcome paper_fixture() {
  Outcome out;
  const FlowMatrix flow = fixture::three_country();
  const Embedding emb = compose_map(flow);
  const auto lap = normalized_laplacian(affinity(flow));
  const auto lambda = oracle::cubic_eigenvalues(lap.values);
  double worst = std::abs(lambda[0]);
  for (std::size_t j = 0; j < 2; ++j) {
    worst = std::max(worst, std::abs(lambda[j + 1] - emb.eigenvalues_used[j]));
    const auto v = oracle::cubic_eigenvector(lap.values, lambda[j + 1]);
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(v[i] - emb.coordinates(i, j)));
  }
  const double a = emb.coordinates(0, 0), b = emb.coordinates(1, 0), c = emb.coordinates(2, 0);
  const bool between = (a < b && b < c) || (c < b && b < a);
  const double ab = std::abs(a - b), bc = std::abs(b - c), ac = std::abs(a - c);
  const bool ordered = bc < ab && ab < ac;
  const Matrix d = pairwise_distances(emb).distances;
  out.pass = between && ordered && worst <= 1e-10;
  out.detail = fmt("x = (%.4f, %.4f, %.4f), |BC| %.4f < |AB| %.4f < |AC| %.4f, oracle %.1e; 2-D AB %.4f AC %.4f BC %.4f",
                   a, b, c, bc, ab, ac, worst, d(0, 1), d(0, 2), d(1, 2));
  return out;
}

struct GravityRun {
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double correlation = 0.0;
};

inline GravityRun gravity_run(std::uint64_t seed, std::size_t n_per_cluster, double noise) {
  const auto s = planted_cluster_scenario(seed, n_per_cluster, {{0.0, 0.0}, {10.0, 0.0}}, 1.0);
  const auto score = recovery_score(s, compose_map(gravity_flows(s, noise)));
  return {2 * n_per_cluster, seed, *score.partition_accuracy, score.distance_rank_correlation};
}

// Two clusters, centers 10 spreads apart, 10 to 60 points, seeds 1..100 at
// every size.
inline Outcome gravity_recovery() {
  Stopwatch clock;
  Outcome out;
  std::vector<GravityRun> clean, noisy;
  for (std::size_t per = 5; per <= 30; per += 5)
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      clean.push_back(gravity_run(seed, per, 0.0));
      noisy.push_back(gravity_run(seed, per, 0.3));
    }
  std::size_t imperfect = 0;
  std::string first_bad;
  double rho = 0.0, noisy_acc = 0.0;
  for (const auto& r : clean) {
    rho += r.correlation;
    if (r.accuracy != 1.0 && imperfect++ == 0)
      first_bad = fmt(" (n=%zu seed=%llu accuracy %.3f)", r.points, static_cast<unsigned long long>(r.seed), r.accuracy);
  }
  for (const auto& r : noisy) noisy_acc += r.accuracy;
  rho /= static_cast<double>(clean.size());
  noisy_acc /= static_cast<double>(noisy.size());
  const double t = clock.seconds();
  out.pass = imperfect == 0 && rho >= 0.8 && noisy_acc >= 0.95 && t <= 60.0;
  out.detail = fmt("%zu runs, accuracy < 1 on %zu%s, mean rank correlation %.4f (need 0.8), noisy mean accuracy %.4f, %.2fs",
                   clean.size(), imperfect, first_bad.c_str(), rho, noisy_acc, t);
  return out;
}

inline Outcome ingestion() {
  Outcome out;
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) failures.push_back(what);
  };

  {
    std::istringstream in("reporter,partner,year,export_value\nA,B,2009,-9\nB,A,2009,4.5\n");
    const auto recs = parse_dyadic_csv(in).records;
    expect(recs.size() == 2 && !recs[0].export_value && recs[1].export_value == 4.5, "sentinel");
  }

  const std::vector<DyadRecord> three = {{"A", "B", 2009, 1.0}, {"B", "A", 2009, 0.0}, {"B", "C", 2009, 2.0},
                                         {"C", "B", 2009, 0.0}, {"C", "A", 2009, 0.01}};
  {
    const auto dropped = build_flow_matrix(three, 2009, MissingPolicy::DropIncomplete);
    expect(dropped.flow.roster().codes() == std::vector<std::string>{"B", "C"} &&
               dropped.dropped == std::vector<std::string>{"A"} && dropped.flow.missing_count() == 0,
           "drop-incomplete");
    const auto filled = build_flow_matrix(three, 2009, MissingPolicy::ZeroFill);
    expect(filled.flow.size() == 3 && filled.flow.missing(0, 2) && filled.flow(0, 2) == 0.0 &&
               filled.flow.missing_count() == 1 && filled.flow(2, 0) == 0.01,
           "zero-fill");
  }

  {
    Rng rng(77);
    bool exact = true;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + rng.next() % 15;
      Matrix w(n, n);
      std::vector<std::uint8_t> mask(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          if (rng.uniform() < 0.1)
            mask[i * n + j] = 1;
          else
            w(i, j) = std::exp(rng.uniform(-20.0, 20.0));
        }
      const FlowMatrix flow(CountryRoster(synthetic_codes(n)), w, mask);
      std::stringstream buf;
      write_dyadic_csv(buf, flow, 1999);
      const auto back = build_flow_matrix(parse_dyadic_csv(buf).records, 1999, MissingPolicy::ZeroFill).flow;
      exact = exact && back == flow;
    }
    expect(exact, "round trip");
  }

  {
    Rng rng(78);
    std::vector<DyadRecord> recs;
    const auto codes = synthetic_codes(12);
    for (const auto& r : codes)
      for (const auto& p : codes)
        if (r != p) recs.push_back({r, p, 2009, rng.uniform(0.0, 5.0)});
    const auto reference = build_flow_matrix(recs, 2009, MissingPolicy::ZeroFill).flow;
    bool stable = true;
    for (int trial = 0; trial < 20; ++trial) {
      for (std::size_t i = recs.size() - 1; i > 0; --i) std::swap(recs[i], recs[rng.next() % (i + 1)]);
      stable = stable && build_flow_matrix(recs, 2009, MissingPolicy::ZeroFill).flow == reference;
    }
    expect(stable, "row shuffling");
  }

  out.pass = failures.empty();
  out.detail = "sentinel, drop-incomplete, zero-fill, round trip, row shuffling";
  if (!out.pass) {
    out.detail += "; failed:";
    for (const auto& f : failures) out.detail += " " + f;
  }
  return out;
}

}  // namespace suite
