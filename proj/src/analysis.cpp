#include "trademap/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "trademap/error.hpp"

namespace trademap {
namespace {

double distance(const Matrix& x, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double d = x(i, c) - x(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

void require_same_roster(const CountryRoster& a, const CountryRoster& b) {
  if (a == b) return;
  const std::set<std::string> sa(a.codes().begin(), a.codes().end());
  const std::set<std::string> sb(b.codes().begin(), b.codes().end());
  std::vector<std::string> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(diff));
  std::string msg = "rosters differ:";
  for (const auto& c : diff) msg += " " + c;
  throw Error(ErrorCode::RosterMismatch, msg);
}

}  // namespace

DistanceReport pairwise_distances(const Embedding& emb) {
  const std::size_t n = emb.size();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = distance(emb.coordinates, i, j);
  return {emb.roster, std::move(d)};
}

std::vector<Neighbor> nearest_neighbors(const Embedding& emb, const std::string& code, std::size_t m) {
  const auto query = emb.roster.index_of(code);
  if (!query) throw Error(ErrorCode::Lookup, "unknown country code '" + code + "'");
  const std::size_t n = emb.size();
  if (m == 0 || m >= n)
    throw Error(ErrorCode::InvalidArgument,
                "neighbor count must be in [1, " + std::to_string(n - 1) + "], got " + std::to_string(m));

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    if (j != *query) ranked.emplace_back(distance(emb.coordinates, *query, j), j);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(m), ranked.end());

  std::vector<Neighbor> out;
  out.reserve(m);
  for (std::size_t r = 0; r < m; ++r) out.push_back({emb.roster.code(ranked[r].second), ranked[r].first});
  return out;
}

Bipartition bipartition(const Embedding& emb, double zero_band) {
  if (emb.dims() < 1) throw Error(ErrorCode::Dimension, "bipartition needs at least one coordinate");
  if (zero_band < 0.0) throw Error(ErrorCode::InvalidArgument, "zero band must be nonnegative");
  bool any_pos = false;
  bool any_neg = false;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    any_pos |= emb.coordinates(i, 0) > 0.0;
    any_neg |= emb.coordinates(i, 0) < 0.0;
  }
  if (!any_pos || !any_neg)
    throw Error(ErrorCode::Invariant,
                "first coordinate does not change sign; it cannot be a nontrivial Laplacian eigenvector");

  Bipartition part;
  part.boundary_tolerance = zero_band;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    const double x = emb.coordinates(i, 0);
    const std::string& code = emb.roster.code(i);
    (x >= 0.0 ? part.positive_set : part.negative_set).push_back(code);
    if (std::abs(x) <= zero_band) part.boundary.push_back(code);
  }
  return part;
}

ProcrustesResult procrustes_align(const Embedding& reference, const Embedding& target,
                                  const ProcrustesOptions& options) {
  require_same_roster(reference.roster, target.roster);
  if (reference.dims() != target.dims())
    throw Error(ErrorCode::Dimension, "embeddings have different dimensions");
  const std::size_t n = reference.size();
  const std::size_t k = reference.dims();

  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const Mat> ref(reference.coordinates.data().data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(k));
  const Eigen::Map<const Mat> tgt(target.coordinates.data().data(), static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(k));

  // min ||s T Q - R||_F over orthogonal Q: Q = U V^T from T^T R = U S V^T.
  const Mat cross = tgt.transpose() * ref;
  Eigen::JacobiSVD<Mat> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU();
  Eigen::VectorXd sigma = svd.singularValues();
  const Mat v = svd.matrixV();
  if (!options.allow_reflection && (u * v.transpose()).determinant() < 0.0) {
    u.col(static_cast<Eigen::Index>(k) - 1) *= -1.0;
    sigma(static_cast<Eigen::Index>(k) - 1) *= -1.0;
  }
  const Mat q = u * v.transpose();

  double scale = 1.0;
  if (options.allow_scaling) {
    const double norm2 = tgt.squaredNorm();
    if (norm2 > 0.0) scale = sigma.sum() / norm2;
  }
  const Mat aligned = scale * tgt * q;

  ProcrustesResult result;
  result.aligned = target;
  result.transform = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      result.transform(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      result.aligned.coordinates(i, j) = aligned(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  result.scale = scale;
  result.disparity = (aligned - ref).squaredNorm();
  return result;
}

}  // namespace trademap
