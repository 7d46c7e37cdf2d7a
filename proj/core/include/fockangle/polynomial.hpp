#pragma once

#include <map>
#include <string>
#include <string_view>

#include "fockangle/symmetric_power.hpp"
#include "fockangle/types.hpp"

namespace fockangle {

/// Homogeneous polynomial of a fixed degree in d variables, stored sparsely.
/// Zero coefficients are never stored.
class HomogeneousPoly {
public:
  HomogeneousPoly(int d, int degree);

  static HomogeneousPoly monomial(const MultiIndex& alpha, Scalar coeff = 1.0);
  /// Inverse of da_coordinates.
  static HomogeneousPoly from_da_coordinates(int d, int degree, const Vector& x);

  int variables() const { return d_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
  Scalar coeff(const MultiIndex& alpha) const;

  /// Adds c z^α; α must have this polynomial's shape and degree.
  void add_term(const MultiIndex& alpha, Scalar c);

  HomogeneousPoly operator+(const HomogeneousPoly& other) const;
  HomogeneousPoly operator-(const HomogeneousPoly& other) const;
  HomogeneousPoly operator*(const HomogeneousPoly& other) const;
  HomogeneousPoly operator*(Scalar s) const;

  Scalar evaluate(const Vector& z) const;

  /// g(z) = f(M z) for M of size variables() x d'; the result has d' variables.
  HomogeneousPoly substitute(const Matrix& m) const;

  /// Coordinates f_α sqrt(α!/n!) in MonomialBasis(d, n) order; the Euclidean
  /// inner product of these vectors is the Drury-Arveson inner product.
  Vector da_coordinates() const;

  std::string to_string() const;

private:
  int d_;
  int degree_;
  std::map<MultiIndex, Scalar> terms_;
};

/// ⟨f, g⟩ = Σ_α f_α conj(g_α) α!/|α|!; polynomials of different degrees are orthogonal.
Scalar da_inner(const HomogeneousPoly& f, const HomogeneousPoly& g);
double da_norm_sq(const HomogeneousPoly& f);

/// ⟨·, λ⟩^n with coefficients (n!/α!) conj(λ)^α.
HomogeneousPoly kernel_power(const Vector& lambda, int n);

/// Parses a homogeneous polynomial in d variables.
///
///   poly    := ['+'|'-'] term (('+'|'-') term)*
///   term    := [coeff] ['*'] factor (['*'] factor)*  |  coeff
///   coeff   := real | real 'i' | 'i' | '(' complex ')'
///   factor  := var ['^' integer]
///   var     := 'x' integer (1-based, at most d)  |  'x' | 'y' | 'z'  (only when d <= 3)
///
/// Whitespace is ignored between tokens. Throws InputError with the character
/// position on malformed or inhomogeneous input.
HomogeneousPoly parse_polynomial(std::string_view text, int d);

}  // namespace fockangle
