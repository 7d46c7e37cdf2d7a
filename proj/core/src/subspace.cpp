#include "fockangle/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "fockangle/errors.hpp"

namespace fockangle {

namespace {

void require_same_ambient(const Subspace& m, const Subspace& n, const char* op) {
  if (m.ambient_dim() != n.ambient_dim()) {
    std::ostringstream os;
    os << op << ": ambient dimension mismatch (" << m.ambient_dim() << " vs " << n.ambient_dim()
       << ")";
    throw InputError(os.str());
  }
}

// Left singular vectors whose singular value exceeds `threshold` (absolute).
Matrix leading_left_singular_vectors(const Matrix& x, double threshold) {
  if (x.cols() == 0 || x.rows() == 0) return Matrix(x.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Index keep = 0;
  while (keep < s.size() && s(keep) > threshold) ++keep;
  return svd.matrixU().leftCols(keep);
}

RealVector singular_values(const Matrix& x) {
  if (x.size() == 0) return RealVector(0);
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues();
}

// W with W* G W = I spanning the range of G (restricted to eigenvalues above
// tol.rank * lambda_max).
Matrix whiten(const Matrix& g, const Tolerances& tol, const char* side) {
  const Index m = g.rows();
  if (m == 0) return Matrix(0, 0);
  if ((g - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-13) return Matrix::Identity(m, m);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(g);
  if (eig.info() != Eigen::Success) throw InputError("friedrichs_cos_gram: eigensolver failed");
  const RealVector& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = std::max(lambda(m - 1), 0.0);
  if (lambda(0) < -tol.gram_indefinite * std::max(lambda_max, 1e-300) && lambda(0) < -1e-14) {
    std::ostringstream os;
    os << "friedrichs_cos_gram: " << side << " Gram block is indefinite (eigenvalue " << lambda(0)
       << ", largest " << lambda_max << ")";
    throw InputError(os.str());
  }
  if (lambda_max <= 0.0) return Matrix(m, 0);
  const double cutoff = tol.rank * lambda_max;
  Index first = 0;
  while (first < m && lambda(first) <= cutoff) ++first;
  Matrix w = eig.eigenvectors().rightCols(m - first);
  for (Index j = 0; j < w.cols(); ++j) w.col(j) /= std::sqrt(lambda(first + j));
  return w;
}

AngleResult deflate(const RealVector& s, double intersection_tol, AngleMethod method) {
  AngleResult result;
  result.method = method;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) >= 1.0 - intersection_tol) {
      ++result.dim_intersection;
    } else {
      result.cosine = std::max(result.cosine, s(i));
    }
  }
  result.cosine = std::clamp(result.cosine, 0.0, 1.0);
  return result;
}

}  // namespace

std::string_view to_string(AngleMethod method) {
  switch (method) {
    case AngleMethod::principal_angles: return "principal_angles";
    case AngleMethod::gram: return "gram";
    case AngleMethod::projection_norm: return "projection_norm";
  }
  return "unknown";
}

Subspace Subspace::from_orthonormal(Matrix basis, double tol) {
  if (!basis.allFinite()) throw InputError("Subspace: basis has non-finite entries");
  if (basis.cols() > basis.rows()) throw InputError("Subspace: more basis vectors than ambient dimension");
  if (basis.cols() > 0) {
    const Matrix gram = basis.adjoint() * basis;
    const double err = (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (err > tol) {
      std::ostringstream os;
      os << "Subspace: basis columns are not orthonormal (deviation " << err << ")";
      throw InputError(os.str());
    }
  }
  return Subspace(std::move(basis), 0.0);
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0), 0.0); }

Subspace Subspace::full(Index ambient_dim) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim), 0.0);
}

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

GramSpan::GramSpan(std::vector<Index> block_sizes, Matrix gram)
    : block_sizes_(std::move(block_sizes)), gram_(std::move(gram)) {
  const Index total = std::accumulate(block_sizes_.begin(), block_sizes_.end(), Index{0});
  if (gram_.rows() != total || gram_.cols() != total) {
    throw InputError("GramSpan: Gram size does not match the block sizes");
  }
  if (!gram_.allFinite()) throw InputError("GramSpan: non-finite Gram entries");
  if (total > 0) {
    const double scale = std::max(1.0, gram_.cwiseAbs().maxCoeff());
    const double asym = (gram_ - gram_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
      std::ostringstream os;
      os << "GramSpan: Gram matrix is not Hermitian (deviation " << asym << ")";
      throw InputError(os.str());
    }
  }
}

Index GramSpan::offset(std::size_t block) const {
  return std::accumulate(block_sizes_.begin(), block_sizes_.begin() + static_cast<std::ptrdiff_t>(block),
                         Index{0});
}

Subspace orthonormalize(const Matrix& columns, double rank_tol) {
  if (rank_tol < 0.0) throw InputError("orthonormalize: rank_tol must be nonnegative");
  if (!columns.allFinite()) throw InputError("orthonormalize: non-finite entries");
  if (columns.cols() == 0 || columns.rows() == 0) return Subspace(Matrix(columns.rows(), 0), rank_tol);
  Eigen::BDCSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  if (s(0) == 0.0) return Subspace(Matrix(columns.rows(), 0), rank_tol);
  const double cutoff = rank_tol * s(0);
  Index keep = 0;
  while (keep < s.size() && s(keep) > cutoff) ++keep;
  return Subspace(svd.matrixU().leftCols(keep), rank_tol);
}

Subspace intersect(const Subspace& m, const Subspace& n, const Tolerances& tol) {
  require_same_ambient(m, n, "intersect");
  if (m.is_zero() || n.is_zero()) return Subspace::zero(m.ambient_dim());
  const Matrix cross = m.basis().adjoint() * n.basis();
  Eigen::BDCSVD<Matrix> svd(cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& s = svd.singularValues();
  Index count = 0;
  while (count < s.size() && s(count) >= 1.0 - tol.intersection) ++count;
  if (count == 0) return Subspace::zero(m.ambient_dim());
  const Matrix from_m = m.basis() * svd.matrixU().leftCols(count);
  const Matrix from_n = n.basis() * svd.matrixV().leftCols(count);
  return orthonormalize(0.5 * (from_m + from_n), tol.rank);
}

Subspace intersect_all(std::span<const Subspace> subspaces, const Tolerances& tol) {
  if (subspaces.empty()) throw InputError("intersect_all: empty subspace list");
  Subspace acc = subspaces.front();
  for (std::size_t i = 1; i < subspaces.size(); ++i) acc = intersect(acc, subspaces[i], tol);
  return acc;
}

Subspace span_union(std::span<const Subspace> subspaces, double rank_tol) {
  if (subspaces.empty()) throw InputError("span_union: empty subspace list");
  const Index ambient = subspaces.front().ambient_dim();
  Index cols = 0;
  for (const auto& s : subspaces) {
    if (s.ambient_dim() != ambient) throw InputError("span_union: ambient dimension mismatch");
    cols += s.dim();
  }
  Matrix all(ambient, cols);
  Index at = 0;
  for (const auto& s : subspaces) {
    all.middleCols(at, s.dim()) = s.basis();
    at += s.dim();
  }
  return orthonormalize(all, rank_tol);
}

Subspace difference(const Subspace& m, const Subspace& k, double rank_tol) {
  require_same_ambient(m, k, "difference");
  if (m.is_zero() || k.is_zero()) return m;
  const Matrix residual = m.basis() - k.basis() * (k.basis().adjoint() * m.basis());
  // Singular values of the residual are the sines between M and K; directions
  // shared with K have sines at rounding level.
  const double threshold = std::max(std::sqrt(rank_tol), 1e-7);
  return Subspace::from_orthonormal(leading_left_singular_vectors(residual, threshold), 1e-10);
}

Subspace orthogonal_complement(const Subspace& m, double rank_tol) {
  const Index n = m.ambient_dim();
  if (m.is_zero()) return Subspace::full(n);
  // Left singular vectors of B_M beyond its rank span the complement.
  Eigen::BDCSVD<Matrix> svd(m.basis(), Eigen::ComputeFullU);
  const RealVector& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * s(0)) ++rank;
  return Subspace::from_orthonormal(svd.matrixU().rightCols(n - rank), 1e-10);
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double subspace_distance(const Subspace& m, const Subspace& n) {
  require_same_ambient(m, n, "subspace_distance");
  return operator_norm(m.projector() - n.projector());
}

double cross_norm(const Subspace& m, const Subspace& n) {
  require_same_ambient(m, n, "cross_norm");
  if (m.is_zero() || n.is_zero()) return 0.0;
  return operator_norm(m.basis().adjoint() * n.basis());
}

AngleResult friedrichs_cos(const Subspace& m, const Subspace& n, const Tolerances& tol) {
  require_same_ambient(m, n, "friedrichs_cos");
  AngleResult result;
  if (!m.is_zero() && !n.is_zero()) {
    // Both orientations, so that swapping the arguments reproduces the result bit for bit.
    const AngleResult ab = deflate(singular_values(m.basis().adjoint() * n.basis()), tol.intersection,
                                   AngleMethod::principal_angles);
    const AngleResult ba = deflate(singular_values(n.basis().adjoint() * m.basis()), tol.intersection,
                                   AngleMethod::principal_angles);
    const auto rank = [](const AngleResult& r) { return std::pair(r.cosine, r.dim_intersection); };
    result = rank(ab) >= rank(ba) ? ab : ba;
  }
  result.dim_left = m.dim();
  result.dim_right = n.dim();
  return result;
}

AngleResult friedrichs_cos_projection(const Subspace& m, const Subspace& n, const Tolerances& tol) {
  require_same_ambient(m, n, "friedrichs_cos_projection");
  const Subspace meet = intersect(m, n, tol);
  const Matrix t = m.projector() * n.projector() - meet.projector();
  AngleResult result;
  result.cosine = std::clamp(operator_norm(t), 0.0, 1.0);
  result.dim_intersection = meet.dim();
  result.method = AngleMethod::projection_norm;
  result.dim_left = m.dim();
  result.dim_right = n.dim();
  return result;
}

AngleResult friedrichs_cos_gram(const GramSpan& span, std::size_t split, const Tolerances& tol) {
  if (split == 0 || split >= span.block_count()) {
    throw InputError("friedrichs_cos_gram: split must leave at least one block on each side");
  }
  const Index m = span.offset(split);
  const Index total = span.gram().rows();
  const Matrix& g = span.gram();
  const Matrix w_left = whiten(g.topLeftCorner(m, m), tol, "left");
  const Matrix w_right = whiten(g.bottomRightCorner(total - m, total - m), tol, "right");

  AngleResult result;
  result.method = AngleMethod::gram;
  result.dim_left = w_left.cols();
  result.dim_right = w_right.cols();
  if (w_left.cols() == 0 || w_right.cols() == 0) return result;

  const Matrix cross = w_left.adjoint() * g.topRightCorner(m, total - m) * w_right;
  const RealVector s = singular_values(cross);
  if (s(0) > 1.0 + 1e-6) {
    std::ostringstream os;
    os << "friedrichs_cos_gram: Gram matrix is indefinite (cross singular value " << s(0) << ")";
    throw InputError(os.str());
  }
  const AngleResult deflated = deflate(s, tol.intersection, AngleMethod::gram);
  result.cosine = deflated.cosine;
  result.dim_intersection = deflated.dim_intersection;
  return result;
}

SpectralSum sum_projection_spectral(std::span<const Subspace> subspaces, double gap_tol) {
  if (subspaces.empty()) throw InputError("sum_projection_spectral: empty subspace list");
  const Index ambient = subspaces.front().ambient_dim();
  Matrix total = Matrix::Zero(ambient, ambient);
  for (const auto& s : subspaces) {
    if (s.ambient_dim() != ambient) throw InputError("sum_projection_spectral: ambient dimension mismatch");
    total += s.projector();
  }
  total = (0.5 * (total + total.adjoint())).eval();
  if (ambient == 0) return {Subspace::zero(0), std::nullopt};
  Eigen::SelfAdjointEigenSolver<Matrix> eig(total);
  const RealVector& lambda = eig.eigenvalues();
  const double lambda_max = lambda(ambient - 1);
  if (lambda_max <= gap_tol) return {Subspace::zero(ambient), std::nullopt};
  const double cutoff = gap_tol * lambda_max;
  Index first = 0;
  while (first < ambient && lambda(first) <= cutoff) ++first;
  Subspace sum = orthonormalize(eig.eigenvectors().rightCols(ambient - first), 1e-10);
  return {std::move(sum), lambda(first)};
}

std::vector<double> alternating_projection_decay(const Subspace& m, const Subspace& n, int n_max,
                                                 const Tolerances& tol) {
  require_same_ambient(m, n, "alternating_projection_decay");
  if (n_max < 1) throw InputError("alternating_projection_decay: n_max must be at least 1");
  const Matrix pm = m.projector();
  const Matrix t = pm * n.projector() * pm;
  const Matrix p_meet = intersect(m, n, tol).projector();
  const double c = friedrichs_cos(m, n, tol).cosine;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_max));
  Matrix power = t;
  for (int k = 1; k <= n_max; ++k) {
    if (k > 1) power = (power * t).eval();
    const double value = operator_norm(power - p_meet);
    const double expected = std::pow(c, 2 * k);
    if (std::abs(value - expected) > 1e-9) {
      std::ostringstream os;
      os << "alternating_projection_decay: ||(P_M P_N P_M)^" << k << " - P_meet|| = " << value
         << " differs from c^" << 2 * k << " = " << expected;
      throw ContractViolation(os.str());
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace fockangle
