#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fockangle/polynomial.hpp"
#include "fockangle/subspace.hpp"

namespace fockangle {

/// Ideal generated by finitely many homogeneous polynomials in d variables.
class HomogeneousIdeal {
public:
  HomogeneousIdeal(int d, std::vector<HomogeneousPoly> generators);

  int variables() const { return d_; }
  const std::vector<HomogeneousPoly>& generators() const { return generators_; }

private:
  int d_;
  std::vector<HomogeneousPoly> generators_;
};

/// Generated by the linear forms ⟨z, w⟩ for w running over an orthonormal
/// basis of the orthogonal complement of V.
HomogeneousIdeal vanishing_ideal(const Subspace& v);

/// Degree-n component of the ideal in Drury-Arveson coordinates: the span of
/// m·g over generators g of degree k <= n and monomials m of degree n - k.
Subspace ideal_component(const HomogeneousIdeal& ideal, int n, double rank_tol = Tolerances{}.rank);

/// Orthogonal complement of ideal_component inside the degree-n polynomials.
Subspace coinvariant_component(const HomogeneousIdeal& ideal, int n, double rank_tol = Tolerances{}.rank);

/// The symmetric Fock component V^n carried to Drury-Arveson coordinates by
/// λ^{⊗n} ↦ ⟨·,λ⟩^n, which conjugates occupation coordinates.
Subspace symmetric_component_da(const Subspace& v, int n);

/// Span of ⟨·,λ⟩^n for dim + 5 seeded unit vectors λ ∈ V, where dim is the
/// dimension of the degree-n symmetric power of V.
Subspace kernel_power_span(const Subspace& v, int n, std::uint64_t seed, double rank_tol = 1e-8);

/// A : C^{d'} -> C^d, optionally declared isometric on a subspace of C^{d'}.
struct LinearMapSpec {
  Matrix a;
  std::optional<Subspace> isometric_on;

  /// Throws PreconditionError when the declared isometry fails within `tol`.
  void validate(double tol = 1e-10) const;
};

/// The map f ↦ f∘A* between degree-n polynomial spaces in DA coordinates,
/// restricted to the columns of `domain` (a subspace of the degree-n space
/// over C^{d'}).
Matrix composition_matrix(const LinearMapSpec& map, int n, const Subspace& domain);

struct CompositionRow {
  int degree = 0;
  double norm = 0.0;
  double bound = 0.0;
  double smallest_positive = 0.0;
  Index domain_dim = 0;
};

/// Operator norm of f ↦ f∘A* on the degree-n part of the sum of the
/// coinvariant spaces of the V_i, against the bound r·sqrt(C_n) with
/// C_n = 1 / (smallest positive eigenvalue of the sum of their projections).
std::vector<CompositionRow> composition_norm_profile(const LinearMapSpec& map, std::span<const Subspace> subspaces,
                                                     int max_degree, const Tolerances& tol = {});

}  // namespace fockangle
