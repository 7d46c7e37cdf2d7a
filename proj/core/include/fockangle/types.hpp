#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fockangle {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical cutoffs shared by the subspace algebra.
///
/// `rank` is relative to the largest singular value (or, on Gram matrices, the
/// largest eigenvalue). Cross-singular values at or above `1 - intersection`
/// are treated as directions of the intersection.
struct Tolerances {
  double rank = 1e-10;
  double intersection = 1e-8;
  double orthogonality = 1e-10;
  double gram_indefinite = 1e-10;
};

}  // namespace fockangle
