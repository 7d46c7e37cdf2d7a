#include "fockangle/symmetric_power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "fockangle/errors.hpp"

namespace fockangle {

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw InputError("MultiIndex: negative exponent");
    degree_ += e;
  }
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents_) f *= fockangle::factorial(e);
  return f;
}

double MultiIndex::da_weight() const { return factorial() / fockangle::factorial(degree_); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) throw InputError("MultiIndex: size mismatch in sum");
  std::vector<int> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return MultiIndex(std::move(e));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ')';
  return os.str();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t a = r / g;
    const std::uint64_t b = static_cast<std::uint64_t>(i) / g;
    if (a > std::numeric_limits<std::uint64_t>::max() / num) throw InputError("binomial: overflow");
    r = a * num / b;
  }
  return r;
}

double factorial(int n) {
  if (n < 0) throw InputError("factorial: negative argument");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Index monomial_count(int d, int n) {
  if (d < 0 || n < 0) throw InputError("monomial_count: negative argument");
  if (d == 0) return n == 0 ? 1 : 0;
  return static_cast<Index>(binomial(n + d - 1, d - 1));
}

namespace {

void enumerate(int d, int remaining, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == d - 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    enumerate(d, remaining - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int d, int n) : d_(d), n_(n) {
  if (d < 1) throw InputError("MonomialBasis: need at least one variable");
  if (n < 0) throw InputError("MonomialBasis: negative degree");
  std::vector<int> prefix;
  enumerate(d, n, prefix, monomials_);
  for (std::size_t i = 0; i < monomials_.size(); ++i) position_.emplace(monomials_[i], static_cast<Index>(i));
}

Index MonomialBasis::index_of(const MultiIndex& alpha) const {
  const auto it = position_.find(alpha);
  if (it == position_.end()) {
    std::ostringstream os;
    os << "MonomialBasis: " << alpha.to_string() << " is not a degree-" << n_ << " monomial in " << d_
       << " variables";
    throw InputError(os.str());
  }
  return it->second;
}

Matrix symmetric_power(const Matrix& k, int p) {
  if (p < 0) throw InputError("symmetric_power: negative degree");
  const int a = static_cast<int>(k.rows());
  const int b = static_cast<int>(k.cols());
  if (a == 0 || b == 0) return Matrix(a == 0 ? 0 : monomial_count(a, p), b == 0 ? 0 : monomial_count(b, p));

  std::vector<MonomialBasis> bases;
  bases.reserve(static_cast<std::size_t>(p) + 1);
  for (int m = 0; m <= p; ++m) bases.emplace_back(a, m);
  // successor[m][t * a + i] = index of (monomial t of degree m) + e_i in degree m + 1.
  std::vector<std::vector<Index>> successor(static_cast<std::size_t>(p));
  for (int m = 0; m < p; ++m) {
    const MonomialBasis& basis = bases[static_cast<std::size_t>(m)];
    auto& table = successor[static_cast<std::size_t>(m)];
    table.resize(static_cast<std::size_t>(basis.size() * a));
    for (Index t = 0; t < basis.size(); ++t) {
      std::vector<int> e = basis[t].exponents();
      for (int i = 0; i < a; ++i) {
        ++e[static_cast<std::size_t>(i)];
        table[static_cast<std::size_t>(t * a + i)] = bases[static_cast<std::size_t>(m) + 1].index_of(MultiIndex(e));
        --e[static_cast<std::size_t>(i)];
      }
    }
  }

  const MonomialBasis rows(a, p);
  const MonomialBasis cols(b, p);
  RealVector row_scale(rows.size());
  for (Index r = 0; r < rows.size(); ++r) row_scale(r) = std::sqrt(rows[r].factorial());

  Matrix out(rows.size(), cols.size());
  Vector poly, next;
  for (Index c = 0; c < cols.size(); ++c) {
    const MultiIndex& beta = cols[c];
    poly = Vector::Ones(1);
    int m = 0;
    for (int j = 0; j < b; ++j) {
      for (int t = 0; t < beta[j]; ++t, ++m) {
        const auto& table = successor[static_cast<std::size_t>(m)];
        next = Vector::Zero(bases[static_cast<std::size_t>(m) + 1].size());
        for (Index s = 0; s < poly.size(); ++s) {
          if (poly(s) == Scalar(0)) continue;
          for (int i = 0; i < a; ++i) next(table[static_cast<std::size_t>(s * a + i)]) += poly(s) * k(i, j);
        }
        poly.swap(next);
      }
    }
    out.col(c) = poly.cwiseProduct(row_scale.cast<Scalar>()) / std::sqrt(beta.factorial());
  }
  return out;
}

Matrix kronecker_power(const Matrix& m, int n) {
  if (n < 0) throw InputError("kronecker_power: negative power");
  Matrix out = Matrix::Ones(1, 1);
  for (int i = 0; i < n; ++i) out = Eigen::kroneckerProduct(out, m).eval();
  return out;
}

Matrix symmetric_embedding(int d, int n) {
  if (d < 1 || n < 0) throw InputError("symmetric_embedding: need d >= 1 and n >= 0");
  const MonomialBasis basis(d, n);
  Index full = 1;
  for (int i = 0; i < n; ++i) full *= d;
  Matrix s = Matrix::Zero(full, basis.size());
  // Every word w in {0..d-1}^n lands in the column of its occupation numbers.
  std::vector<int> occupation(static_cast<std::size_t>(d), 0);
  for (Index w = 0; w < full; ++w) {
    Index rest = w;
    std::fill(occupation.begin(), occupation.end(), 0);
    for (int pos = n - 1; pos >= 0; --pos) {
      ++occupation[static_cast<std::size_t>(rest % d)];
      rest /= d;
    }
    const MultiIndex alpha(occupation);
    const Index col = basis.index_of(alpha);
    s(w, col) = std::sqrt(alpha.factorial() / factorial(n));
  }
  return s;
}

}  // namespace fockangle
