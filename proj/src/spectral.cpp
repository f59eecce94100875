#include "trademap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "trademap/error.hpp"

namespace trademap {
namespace {

void require_symmetric(const Matrix& s) {
  if (!s.square()) throw Error(ErrorCode::Dimension, "eigensolver needs a square matrix");
  const double tol = 1e-12 * s.max_abs();
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (!(std::abs(s(i, j) - s(j, i)) <= tol))
        throw Error(ErrorCode::Domain,
                    "matrix not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

// Householder reduction, row by row from the bottom. On return `z` holds the
// accumulated transform, d the diagonal and e[i] the coupling of rows i-1, i
// (e[0] = 0).
void householder(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(z.rows());
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    double tail = 0.0;
    for (int k = 0; k < l; ++k) tail += std::abs(z(i, k));
    if (tail == 0.0) {
      e[i] = z(i, l);
    } else {
      const double scale = tail + std::abs(z(i, l));
      for (int k = 0; k < i; ++k) {
        z(i, k) /= scale;
        h += z(i, k) * z(i, k);
      }
      double f = z(i, l);
      double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      z(i, l) = f - g;
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        z(j, i) = z(i, j) / h;
        g = 0.0;
        for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
        for (int k = j + 1; k < i; ++k) g += z(k, j) * z(i, k);
        e[j] = g / h;
        f += e[j] * z(i, j);
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) {
        f = z(i, j);
        e[j] = g = e[j] - hh * f;
        for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
      }
    }
    d[i] = h;  // zero marks "no reflection" for the accumulation pass
  }
  if (n > 0) {
    d[0] = 0.0;
    e[0] = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    if (d[i] != 0.0) {
      for (int j = 0; j < i; ++j) {
        double g = 0.0;
        for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
        for (int k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (int j = 0; j < i; ++j) z(j, i) = z(i, j) = 0.0;
  }
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of z.
// Here e[i] couples rows i and i+1.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const int n = static_cast<int>(d.size());
  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (sweeps++ == kMaxQlSweeps)
        throw Error(ErrorCode::Convergence, "QL iteration did not converge for eigenvalue index " +
                                                std::to_string(l) + " within " +
                                                std::to_string(kMaxQlSweeps) + " sweeps");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        e[i + 1] = r = std::hypot(f, g);
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < z.rows(); ++k) {
          const double zf = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * zf;
          z(k, i) = c * z(k, i) - s * zf;
        }
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

Tridiagonal tridiagonalize(const Matrix& s) {
  require_symmetric(s);
  const std::size_t n = s.rows();
  Tridiagonal t{std::vector<double>(n, 0.0), {}, s};
  std::vector<double> e(n, 0.0);
  householder(t.q, t.diag, e);
  if (n > 1) t.offdiag.assign(e.begin() + 1, e.end());
  return t;
}

Spectrum symmetric_eigen(const Matrix& s) {
  if (s.rows() == 0) throw Error(ErrorCode::Dimension, "eigensolver needs n >= 1");
  Tridiagonal t = tridiagonalize(s);
  const std::size_t n = s.rows();
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  implicit_ql(t.diag, e, t.q);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t.diag[a] < t.diag[b]; });

  Spectrum out{std::vector<double>(n), Matrix(n, n), 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = t.diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = t.q(i, order[k]);
  }
  out = fix_signs(std::move(out));
  out.residual_bound = eigen_residual(s, out);
  return out;
}

Spectrum fix_signs(Spectrum spectrum) {
  Matrix& v = spectrum.eigenvectors;
  for (std::size_t k = 0; k < v.cols(); ++k) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.rows(); ++i)
      if (std::abs(v(i, k)) > best) {
        best = std::abs(v(i, k));
        pivot = i;
      }
    if (v.rows() > 0 && v(pivot, k) < 0.0)
      for (std::size_t i = 0; i < v.rows(); ++i) v(i, k) = -v(i, k);
  }
  return spectrum;
}

double eigen_residual(const Matrix& s, const Spectrum& spectrum) {
  const std::size_t n = s.rows();
  double worst = 0.0;
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const double lambda = spectrum.eigenvalues[k];
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += s(i, j) * spectrum.eigenvectors(j, k);
      worst = std::max(worst, std::abs(acc - lambda * spectrum.eigenvectors(i, k)));
    }
  }
  return worst;
}

}  // namespace trademap
