#pragma once

#include <vector>

#include "trademap/matrix.hpp"

namespace trademap {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // offdiag[i] couples rows i and i + 1
  Matrix q;                     // S = Q T Q^T
};

// Eigenvalues ascending; column k of `eigenvectors` belongs to eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
  double residual_bound = 0.0;  // max_k ||S v_k - lambda_k v_k||_inf
};

inline constexpr int kMaxQlSweeps = 50;

// Householder reduction of a symmetric matrix to tridiagonal form with the
// orthogonal transform accumulated. Rows whose entries left of the
// subdiagonal are already zero get no reflection, so tridiagonal input comes
// back with Q = I.
Tridiagonal tridiagonalize(const Matrix& s);

// Full eigendecomposition: tridiagonalize, then implicit-shift QL. Result is
// sorted ascending and sign-fixed.
Spectrum symmetric_eigen(const Matrix& s);

// Flips each eigenvector so its largest-magnitude entry (lowest index on
// ties) is positive.
Spectrum fix_signs(Spectrum spectrum);

double eigen_residual(const Matrix& s, const Spectrum& spectrum);

}  // namespace trademap
