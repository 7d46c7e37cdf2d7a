#pragma once

#include <cstdint>
#include <random>

#include "fockangle/subspace.hpp"

namespace fockangle {

/// The only random engine used by the library; every sampler takes it by
/// reference so a single seed fixes a whole run.
using Rng = std::mt19937_64;

/// Matrix with independent standard complex Gaussian entries.
Matrix random_gaussian(Index rows, Index cols, Rng& rng);

/// Uniformly distributed k-dimensional subspace of C^d.
Subspace random_subspace(Index d, Index k, Rng& rng);

/// Haar-distributed unitary d x d matrix.
Matrix random_unitary(Index d, Rng& rng);

/// Uniform point on the unit sphere of V (V must be nonzero).
Vector random_unit_vector(const Subspace& v, Rng& rng);

}  // namespace fockangle
