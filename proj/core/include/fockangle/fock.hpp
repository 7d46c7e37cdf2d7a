#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fockangle/graded.hpp"
#include "fockangle/subspace.hpp"

namespace fockangle {

/// How the Friedrichs cosine between sums of tensor powers is computed.
///  - kronecker_gram: Gram blocks (B_a* B_b)^{⊗n}, size Σ dim(V_i)^n.
///  - isotypic: splits (C^d)^{⊗n} into the two-row Schur-Weyl blocks
///    det(K)^q Sym^{n-2q}(K); needs every factor of dimension at most 2.
///  - automatic: Kronecker when small, isotypic when allowed, otherwise
///    Kronecker up to the Gram budget.
enum class TensorPath { automatic, kronecker_gram, isotypic };

std::string_view to_string(TensorPath path);

struct FockOptions {
  Tolerances tol;
  /// Kronecker Gram dimension always used directly.
  Index small_gram = 256;
  /// Largest Kronecker Gram dimension attempted at all.
  Index gram_budget = 2048;
  TensorPath path = TensorPath::automatic;
};

/// Blocks V_i^{⊗n} described by the factor bases B_i, never materialised
/// unless asked.
struct TensorPowerSpan {
  Index ambient_d = 0;
  int degree = 0;
  std::vector<Subspace> factors;

  TensorPowerSpan(std::vector<Subspace> factors, int degree);

  /// dim(V_i)^n.
  Index block_size(std::size_t i) const;
  /// (B_i* B_j)^{⊗n}.
  Matrix gram_block(std::size_t i, std::size_t j) const;
  /// Gram matrix of the listed blocks, in the listed order.
  GramSpan gram(std::span<const std::size_t> blocks) const;
  /// B_i^{⊗n} as a d^n x dim(V_i)^n matrix.
  Matrix materialize(std::size_t i) const;
};

struct TensorAngle {
  AngleResult angle;
  TensorPath path = TensorPath::kronecker_gram;
};

/// c(Σ_{i∈left} V_i^{⊗n}, V_right^{⊗n}). Degree 0 compares the scalars with
/// themselves and returns 0 with a one-dimensional intersection.
TensorAngle tensor_sum_angle(std::span<const Subspace> factors, std::span<const std::size_t> left,
                             std::size_t right, int degree, const FockOptions& options = {});

/// The symmetric counterpart c(Σ_{i∈left} V_i^n, V_right^n) inside Sym^n(C^d),
/// from the Gram blocks Sym^n(B_a* B_b).
AngleResult symmetric_sum_angle(std::span<const Subspace> factors, std::span<const std::size_t> left,
                                std::size_t right, int degree, const Tolerances& tol = {});

/// c(V1^{⊗n}, V2^{⊗n}); checked against c(V1,V2)^n when V1 ∩ V2 = {0} and
/// c(V1,V2) otherwise.
double tensor_power_angle(const Subspace& v1, const Subspace& v2, int degree,
                          const FockOptions& options = {});

/// Orthonormal bases of V^{⊗n} ⊂ (C^d)^{⊗n} (full) or of the symmetric part
/// V^n in occupation coordinates of Sym^n(C^d) (symmetric), for n = 0..max_degree.
/// Throws BudgetError when a component ambient dimension exceeds `budget`.
GradedSubspace fock_graded(const Subspace& v, int max_degree, bool symmetric, Index budget = 4096);

/// Q = (1/n!) Σ_σ U_σ on (C^d)^{⊗n}, assembled from the occupation basis.
Matrix symmetrizer(int d, int n, Index budget = 4096);

/// The same projection summed over all n! permutations; validation only.
Matrix symmetrizer_by_permutations(int d, int n, Index budget = 1 << 16);

/// ρ^n for n = 0..max_degree with ρ = ||P_{V_1} ... P_{V_r}||; checked that
/// ρ < 1 exactly when the V_i have trivial joint intersection.
std::vector<double> product_norm_decay(std::span<const Subspace> subspaces, int max_degree,
                                       const Tolerances& tol = {});

struct ReductionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// c(Σ_{i<r} W_i^{⊗j}, W_r^{⊗j}) for j = 1..n.
  std::vector<double> terms;
};

/// lhs = c(Σ_{i<r} (W_i ⊕ E)^{⊗n}, (W_r ⊕ E)^{⊗n}) against
/// rhs = max_{1≤j≤n} c(Σ_{i<r} W_i^{⊗j}, W_r^{⊗j}); both agree within 1e-7.
ReductionCheck reduction_formula_check(std::span<const Subspace> w, const Subspace& e, int degree,
                                       const FockOptions& options = {});

}  // namespace fockangle
