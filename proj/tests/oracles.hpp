#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the Householder/QL solver.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "trademap/ingest.hpp"
#include "trademap/matrix.hpp"
#include "trademap/rng.hpp"

namespace oracle {

using trademap::Matrix;

// Characteristic polynomial det(x I - S) via Faddeev-LeVerrier. Coefficients
// are returned highest degree first: c[0] = 1.
inline std::vector<double> characteristic_polynomial(const Matrix& s) {
  const std::size_t n = s.rows();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Matrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = S M_{k-1} + c_{k-1} I
    Matrix next = s * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    m = next;
    const Matrix sm = s * m;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += sm(i, i);
    c[k] = -trace / static_cast<double>(k);
  }
  return c;
}

inline double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (double coef : c) v = v * x + coef;
  return v;
}

inline std::vector<double> derivative(const std::vector<double>& c) {
  const std::size_t deg = c.size() - 1;
  std::vector<double> d;
  for (std::size_t i = 0; i < deg; ++i) d.push_back(c[i] * static_cast<double>(deg - i));
  return d;
}

inline double bisect(const std::vector<double>& c, double lo, double hi) {
  double flo = horner(c, lo);
  for (int it = 0; it < 200 && lo < hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = horner(c, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Roots of a polynomial known to have only real roots, ascending, with
// multiplicity. The critical points (roots of p') interlace the roots, so
// each bracket between consecutive critical points holds one root.
inline std::vector<double> real_roots(const std::vector<double>& c) {
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-c[1] / c[0]};
  double bound = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c[0]));
  bound += 1.0;
  std::vector<double> crit = real_roots(derivative(c));
  std::vector<double> edges;
  edges.push_back(-bound);
  edges.insert(edges.end(), crit.begin(), crit.end());
  edges.push_back(bound);
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const double fa = horner(c, a);
    const double fb = horner(c, b);
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0)) {
      roots.push_back(fa == 0.0 ? a : fb == 0.0 ? b : bisect(c, a, b));
    } else {
      // Same sign on both ends: a double root sits at the nearer critical
      // point (where |p| is smallest).
      roots.push_back(std::abs(fa) < std::abs(fb) ? a : b);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline std::vector<double> charpoly_eigenvalues(const Matrix& s) {
  return real_roots(characteristic_polynomial(s));
}

// Closed-form eigenvalues of a symmetric 3x3 (trigonometric cubic solution),
// ascending.
inline std::array<double, 3> cubic_eigenvalues(const Matrix& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Matrix b(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
  const double det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                     b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                     b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> out{e1, e2, e3};
  std::sort(out.begin(), out.end());
  return out;
}

// Unit eigenvector for a simple eigenvalue of a symmetric 3x3: the largest
// cross product of two rows of (A - lambda I). Sign follows the library's
// convention (largest magnitude entry positive).
inline std::array<double, 3> cubic_eigenvector(const Matrix& a, double lambda) {
  std::array<std::array<double, 3>, 3> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a(i, j) - (i == j ? lambda : 0.0);
  auto cross = [](const std::array<double, 3>& u, const std::array<double, 3>& v) {
    return std::array<double, 3>{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  };
  std::array<double, 3> best{};
  double best_norm = -1.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    auto c = cross(r[i], r[j]);
    const double norm = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    if (norm > best_norm) {
      best_norm = norm;
      best = c;
    }
  }
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(best[i]) > std::abs(best[pivot])) pivot = i;
  const double s = (best[pivot] < 0.0 ? -1.0 : 1.0) / best_norm;
  for (double& x : best) x *= s;
  return best;
}

inline Matrix random_symmetric(trademap::Rng& rng, std::size_t n, double scale = 1.0) {
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = scale * rng.uniform(-1.0, 1.0);
  return s;
}

// Normalized cut of the split given by `in_s` on a weighted graph.
inline double normalized_cut(const Matrix& a, const std::vector<bool>& in_s) {
  double cut = 0.0, vol_s = 0.0, vol_t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      (in_s[i] ? vol_s : vol_t) += a(i, j);
      if (in_s[i] && !in_s[j]) cut += a(i, j);
    }
  return cut / vol_s + cut / vol_t;
}

// Minimum normalized cut over every nontrivial 2-partition; vertex 0 is
// always placed in the returned set.
inline std::vector<bool> brute_force_min_ncut(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<bool> best;
  double best_cut = INFINITY;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<bool> in_s(n, true);
    for (std::size_t i = 1; i < n; ++i) in_s[i] = !((mask >> (i - 1)) & 1U);
    const double c = normalized_cut(a, in_s);
    if (c < best_cut) {
      best_cut = c;
      best = in_s;
    }
  }
  return best;
}

}  // namespace oracle
