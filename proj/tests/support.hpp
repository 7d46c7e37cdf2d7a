#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "fockangle/sampling.hpp"
#include "fockangle/subspace.hpp"

namespace testing_support {

using fockangle::Index;
using fockangle::Matrix;
using fockangle::Scalar;
using fockangle::Subspace;
using fockangle::Vector;

inline Vector unit(Index d, Index i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline Vector vec(std::initializer_list<Scalar> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (Scalar s : entries) v(i++) = s;
  return v;
}

inline Matrix columns(std::initializer_list<Vector> cols) {
  Matrix m(cols.begin()->size(), static_cast<Index>(cols.size()));
  Index j = 0;
  for (const auto& c : cols) m.col(j++) = c;
  return m;
}

inline Subspace span(std::initializer_list<Vector> cols) { return fockangle::orthonormalize(columns(cols)); }

/// The line through (cos θ, sin θ), padded with zeros to ambient dimension d.
inline Subspace line_at(double theta, Index d = 2) {
  Vector v = Vector::Zero(d);
  v(0) = std::cos(theta);
  v(1) = std::sin(theta);
  return span({v});
}

/// Places `s` into coordinates [offset, offset + s.ambient_dim()) of C^d.
inline Subspace embed(const Subspace& s, Index d, Index offset) {
  Matrix b = Matrix::Zero(d, s.dim());
  b.middleRows(offset, s.ambient_dim()) = s.basis();
  return Subspace::from_orthonormal(b);
}

/// Random subspace that is forced to contain a random common direction of `shared`.
inline Subspace random_containing(const Vector& shared, Index k, fockangle::Rng& rng) {
  const Index d = shared.size();
  Matrix cols(d, k);
  cols.col(0) = shared;
  if (k > 1) cols.rightCols(k - 1) = fockangle::random_gaussian(d, k - 1, rng);
  return fockangle::orthonormalize(cols);
}

inline int uniform_int(fockangle::Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace testing_support
