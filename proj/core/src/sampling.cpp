#include "fockangle/sampling.hpp"

#include "fockangle/errors.hpp"

namespace fockangle {

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Scalar(re, im);
    }
  }
  return m;
}

Subspace random_subspace(Index d, Index k, Rng& rng) {
  if (k < 0 || k > d) throw InputError("random_subspace: need 0 <= k <= d");
  if (k == 0) return Subspace::zero(d);
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(d, k, rng));
  const Matrix q = qr.householderQ() * Matrix::Identity(d, k);
  return Subspace::from_orthonormal(q, 1e-10);
}

Matrix random_unitary(Index d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Scalar diag = r(j, j);
    if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

Vector random_unit_vector(const Subspace& v, Rng& rng) {
  if (v.is_zero()) throw InputError("random_unit_vector: zero subspace has no unit vectors");
  const Vector coeffs = random_gaussian(v.dim(), 1, rng).col(0);
  Vector x = v.basis() * coeffs;
  return x / x.norm();
}

}  // namespace fockangle
