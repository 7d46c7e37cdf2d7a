#include "fockangle/polynomial.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "fockangle/errors.hpp"

namespace fockangle {

namespace {

Scalar ipow(Scalar base, int e) {
  Scalar out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

HomogeneousPoly::HomogeneousPoly(int d, int degree) : d_(d), degree_(degree) {
  if (d < 1) throw InputError("HomogeneousPoly: need at least one variable");
  if (degree < 0) throw InputError("HomogeneousPoly: negative degree");
}

HomogeneousPoly HomogeneousPoly::monomial(const MultiIndex& alpha, Scalar coeff) {
  HomogeneousPoly p(alpha.size(), alpha.degree());
  p.add_term(alpha, coeff);
  return p;
}

HomogeneousPoly HomogeneousPoly::from_da_coordinates(int d, int degree, const Vector& x) {
  const MonomialBasis basis(d, degree);
  if (x.size() != basis.size()) {
    std::ostringstream os;
    os << "HomogeneousPoly::from_da_coordinates: expected " << basis.size() << " coordinates, got " << x.size();
    throw InputError(os.str());
  }
  HomogeneousPoly p(d, degree);
  for (Index i = 0; i < basis.size(); ++i) p.add_term(basis[i], x(i) / std::sqrt(basis[i].da_weight()));
  return p;
}

Scalar HomogeneousPoly::coeff(const MultiIndex& alpha) const {
  const auto it = terms_.find(alpha);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void HomogeneousPoly::add_term(const MultiIndex& alpha, Scalar c) {
  if (alpha.size() != d_ || alpha.degree() != degree_) {
    std::ostringstream os;
    os << "HomogeneousPoly: monomial " << alpha.to_string() << " does not fit degree " << degree_ << " in " << d_
       << " variables";
    throw InputError(os.str());
  }
  if (c == Scalar(0)) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Scalar(0)) terms_.erase(it);
  }
}

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& other) const {
  if (other.d_ != d_ || other.degree_ != degree_) throw InputError("HomogeneousPoly: sum of mismatched shapes");
  HomogeneousPoly out(*this);
  for (const auto& [alpha, c] : other.terms_) out.add_term(alpha, c);
  return out;
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& other) const { return *this + other * -1.0; }

HomogeneousPoly HomogeneousPoly::operator*(const HomogeneousPoly& other) const {
  if (other.d_ != d_) throw InputError("HomogeneousPoly: product of mismatched variable counts");
  HomogeneousPoly out(d_, degree_ + other.degree_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) out.add_term(a + b, ca * cb);
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::operator*(Scalar s) const {
  HomogeneousPoly out(d_, degree_);
  for (const auto& [alpha, c] : terms_) out.add_term(alpha, c * s);
  return out;
}

Scalar HomogeneousPoly::evaluate(const Vector& z) const {
  if (z.size() != d_) throw InputError("HomogeneousPoly::evaluate: point has the wrong dimension");
  Scalar total = 0;
  for (const auto& [alpha, c] : terms_) {
    Scalar term = c;
    for (int i = 0; i < d_; ++i) term *= ipow(z(i), alpha[i]);
    total += term;
  }
  return total;
}

HomogeneousPoly HomogeneousPoly::substitute(const Matrix& m) const {
  if (m.rows() != d_) throw InputError("HomogeneousPoly::substitute: matrix row count must equal the variable count");
  const int target = static_cast<int>(m.cols());
  std::vector<HomogeneousPoly> linear;
  for (int i = 0; i < d_; ++i) {
    HomogeneousPoly l(target, 1);
    for (int j = 0; j < target; ++j) {
      std::vector<int> e(static_cast<std::size_t>(target), 0);
      e[static_cast<std::size_t>(j)] = 1;
      l.add_term(MultiIndex(e), m(i, j));
    }
    linear.push_back(std::move(l));
  }
  HomogeneousPoly out(target, degree_);
  for (const auto& [alpha, c] : terms_) {
    HomogeneousPoly term = HomogeneousPoly::monomial(MultiIndex(std::vector<int>(static_cast<std::size_t>(target), 0)), c);
    for (int i = 0; i < d_; ++i) {
      for (int t = 0; t < alpha[i]; ++t) term = term * linear[static_cast<std::size_t>(i)];
    }
    out = out + term;
  }
  return out;
}

Vector HomogeneousPoly::da_coordinates() const {
  const MonomialBasis basis(d_, degree_);
  Vector x = Vector::Zero(basis.size());
  for (const auto& [alpha, c] : terms_) x(basis.index_of(alpha)) = c * std::sqrt(alpha.da_weight());
  return x;
}

std::string HomogeneousPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [alpha, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (int i = 0; i < d_; ++i) {
      if (alpha[i] == 0) continue;
      os << "*x" << i + 1;
      if (alpha[i] > 1) os << '^' << alpha[i];
    }
  }
  return os.str();
}

Scalar da_inner(const HomogeneousPoly& f, const HomogeneousPoly& g) {
  if (f.variables() != g.variables()) throw InputError("da_inner: variable count mismatch");
  if (f.degree() != g.degree()) return 0;
  Scalar total = 0;
  for (const auto& [alpha, c] : f.terms()) {
    const Scalar other = g.coeff(alpha);
    if (other != Scalar(0)) total += c * std::conj(other) * alpha.da_weight();
  }
  return total;
}

double da_norm_sq(const HomogeneousPoly& f) { return da_inner(f, f).real(); }

HomogeneousPoly kernel_power(const Vector& lambda, int n) {
  const int d = static_cast<int>(lambda.size());
  const MonomialBasis basis(d, n);
  HomogeneousPoly p(d, n);
  const double n_fact = factorial(n);
  for (const auto& alpha : basis.monomials()) {
    Scalar c = n_fact / alpha.factorial();
    for (int i = 0; i < d; ++i) c *= ipow(std::conj(lambda(i)), alpha[i]);
    p.add_term(alpha, c);
  }
  return p;
}

}  // namespace fockangle
