#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fockangle/types.hpp"

namespace fockangle {

/// A subspace of C^n held as an orthonormal column basis.
///
/// A basis with zero columns is the zero subspace; it is a valid argument to
/// every operation in this library.
class Subspace {
public:
  /// Checks that `basis` has orthonormal columns (entrywise within `tol`).
  static Subspace from_orthonormal(Matrix basis, double tol = 1e-12);
  static Subspace zero(Index ambient_dim);
  static Subspace full(Index ambient_dim);

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool is_zero() const { return basis_.cols() == 0; }
  const Matrix& basis() const { return basis_; }
  double rank_tol() const { return rank_tol_; }

  /// Dense orthogonal projection onto the subspace.
  Matrix projector() const;

private:
  Subspace(Matrix basis, double rank_tol) : basis_(std::move(basis)), rank_tol_(rank_tol) {}

  Matrix basis_;
  double rank_tol_ = 0.0;

  friend Subspace orthonormalize(const Matrix& columns, double rank_tol);
};

enum class AngleMethod { principal_angles, gram, projection_norm };

std::string_view to_string(AngleMethod method);

/// Friedrichs cosine between two subspaces together with the intersection
/// dimension that was deflated to obtain it.
struct AngleResult {
  double cosine = 0.0;
  Index dim_intersection = 0;
  AngleMethod method = AngleMethod::principal_angles;
  Index dim_left = 0;
  Index dim_right = 0;
};

/// Spans of several spanning sets described only through their mutual inner
/// products. Block i holds `block_sizes[i]` spanning vectors.
class GramSpan {
public:
  GramSpan(std::vector<Index> block_sizes, Matrix gram);

  std::size_t block_count() const { return block_sizes_.size(); }
  const std::vector<Index>& block_sizes() const { return block_sizes_; }
  const Matrix& gram() const { return gram_; }
  Index offset(std::size_t block) const;

private:
  std::vector<Index> block_sizes_;
  Matrix gram_;
};

/// Orthonormal basis of the column span; singular directions below
/// `rank_tol * sigma_max` are dropped. Throws InputError on non-finite entries.
Subspace orthonormalize(const Matrix& columns, double rank_tol = Tolerances{}.rank);

/// M ∩ N from the cross-singular vectors of B_M* B_N.
Subspace intersect(const Subspace& m, const Subspace& n, const Tolerances& tol = {});

/// Iterated intersection of all subspaces. Requires a non-empty list.
Subspace intersect_all(std::span<const Subspace> subspaces, const Tolerances& tol = {});

/// Algebraic sum (the span of the union of bases).
Subspace span_union(std::span<const Subspace> subspaces, double rank_tol = Tolerances{}.rank);

/// M ⊖ K: the part of M orthogonal to K.
Subspace difference(const Subspace& m, const Subspace& k, double rank_tol = Tolerances{}.rank);

Subspace orthogonal_complement(const Subspace& m, double rank_tol = Tolerances{}.rank);

/// Largest singular value.
double operator_norm(const Matrix& a);

/// ||P_M - P_N||, zero iff the subspaces coincide.
double subspace_distance(const Subspace& m, const Subspace& n);

/// max |<x, y>| over unit x in M, y in N.
double cross_norm(const Subspace& m, const Subspace& n);

/// Friedrichs cosine c(M, N) by principal angles.
///
/// Cross-singular values within the intersection tolerance of 1 are deflated
/// and the largest remaining one is the cosine. Nested subspaces (including
/// the zero subspace) give 0.
AngleResult friedrichs_cos(const Subspace& m, const Subspace& n, const Tolerances& tol = {});

/// Oracle path: ||P_M P_N - P_{M∩N}|| from dense projection matrices.
AngleResult friedrichs_cos_projection(const Subspace& m, const Subspace& n,
                                      const Tolerances& tol = {});

/// Friedrichs cosine between span(blocks [0, split)) and span(blocks [split, end))
/// computed from the Gram matrix alone.
AngleResult friedrichs_cos_gram(const GramSpan& span, std::size_t split,
                                const Tolerances& tol = {});

struct SpectralSum {
  Subspace sum;
  /// Smallest positive eigenvalue of P_1 + ... + P_s; empty when the sum is {0}.
  std::optional<double> smallest_positive;
};

/// N_1 + ... + N_s as the range of P_{N_1} + ... + P_{N_s}.
SpectralSum sum_projection_spectral(std::span<const Subspace> subspaces, double gap_tol = 1e-10);

/// ||(P_M P_N P_M)^k - P_{M∩N}|| for k = 1..n_max; checked against c(M,N)^{2k}.
std::vector<double> alternating_projection_decay(const Subspace& m, const Subspace& n, int n_max,
                                                 const Tolerances& tol = {});

}  // namespace fockangle
