#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fockangle/types.hpp"

namespace fockangle {

/// Exponent vector of a monomial z^α in d variables, also the occupation
/// numbers of a symmetric tensor.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  int size() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }

  /// α! = Π α_i!
  double factorial() const;
  /// α! / |α|!, the squared Drury-Arveson norm of z^α.
  double da_weight() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Ordered by exponents, lexicographically.
  auto operator<=>(const MultiIndex& other) const { return exponents_ <=> other.exponents_; }
  bool operator==(const MultiIndex& other) const { return exponents_ == other.exponents_; }

  std::string to_string() const;

private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Exact binomial coefficient; throws InputError on overflow.
std::uint64_t binomial(int n, int k);

double factorial(int n);

/// Number of monomials of degree n in d variables, C(n+d-1, d-1).
Index monomial_count(int d, int n);

/// All monomials of degree n in d variables, in descending lexicographic order
/// (z_1^n first, z_d^n last).
class MonomialBasis {
public:
  MonomialBasis(int d, int n);

  int variables() const { return d_; }
  int degree() const { return n_; }
  Index size() const { return static_cast<Index>(monomials_.size()); }
  const MultiIndex& operator[](Index i) const { return monomials_[static_cast<std::size_t>(i)]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  /// Position of α; throws InputError if α has the wrong shape or degree.
  Index index_of(const MultiIndex& alpha) const;

private:
  int d_;
  int n_;
  std::vector<MultiIndex> monomials_;
  std::map<MultiIndex, Index> position_;
};

/// Sym^p(K) for K of size a x b, in the orthonormal occupation bases of
/// Sym^p(C^b) -> Sym^p(C^a). Functorial: Sym^p(A) Sym^p(B) = Sym^p(A B) and
/// Sym^p(K*) = Sym^p(K)*.
Matrix symmetric_power(const Matrix& k, int p);

/// M^{⊗n}; the first factor is the most significant index. n = 0 gives [[1]].
Matrix kronecker_power(const Matrix& m, int n);

/// Isometry from occupation coordinates of Sym^n(C^d) into (C^d)^{⊗n}:
/// column α is the normalised sum of all arrangements of α.
Matrix symmetric_embedding(int d, int n);

}  // namespace fockangle
