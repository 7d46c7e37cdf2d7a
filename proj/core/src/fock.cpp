#include "fockangle/fock.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockangle/errors.hpp"
#include "fockangle/symmetric_power.hpp"

namespace fockangle {

std::string_view to_string(TensorPath path) {
  switch (path) {
    case TensorPath::automatic: return "automatic";
    case TensorPath::kronecker_gram: return "kronecker_gram";
    case TensorPath::isotypic: return "isotypic";
  }
  return "unknown";
}

namespace {

Index checked_power(Index base, int exponent, Index limit) {
  Index out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > limit / base) return limit + 1;
    out *= base;
  }
  return out;
}

void require_common_ambient(std::span<const Subspace> subspaces, const char* op) {
  if (subspaces.empty()) {
    std::ostringstream os;
    os << op << ": empty subspace list";
    throw InputError(os.str());
  }
  for (const auto& s : subspaces) {
    if (s.ambient_dim() != subspaces.front().ambient_dim()) {
      std::ostringstream os;
      os << op << ": ambient dimension mismatch (" << s.ambient_dim() << " vs "
         << subspaces.front().ambient_dim() << ")";
      throw InputError(os.str());
    }
  }
}

void require_indices(std::span<const Subspace> factors, std::span<const std::size_t> left, std::size_t right,
                     int degree, const char* op) {
  require_common_ambient(factors, op);
  if (degree < 0) {
    std::ostringstream os;
    os << op << ": negative degree " << degree;
    throw InputError(os.str());
  }
  if (left.empty()) {
    std::ostringstream os;
    os << op << ": empty left sum";
    throw InputError(os.str());
  }
  for (std::size_t i : left) {
    if (i >= factors.size()) throw InputError(std::string(op) + ": left index out of range");
  }
  if (right >= factors.size()) throw InputError(std::string(op) + ": right index out of range");
}

// Number of eigenvalues of a PSD Gram matrix above tol.rank * lambda_max.
Index gram_rank(const Matrix& g, const Tolerances& tol) {
  if (g.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const RealVector& lambda = eig.eigenvalues();
  const double lambda_max = lambda(lambda.size() - 1);
  if (lambda_max <= 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < lambda.size(); ++i) rank += lambda(i) > tol.rank * lambda_max ? 1 : 0;
  return rank;
}

using BlockFn = Matrix (*)(const Matrix& k, int degree, int q);

Matrix kron_block(const Matrix& k, int degree, int) { return kronecker_power(k, degree); }

Matrix isotypic_block(const Matrix& k, int degree, int q) {
  const int p = degree - 2 * q;
  Matrix block = symmetric_power(k, p);
  if (q > 0) block *= std::pow(k.determinant(), q);
  return block;
}

// Angle between the sum of the `left` blocks and the `right` block, where the
// block Gram between factors a and b is block(B_a* B_b). Factors for which
// `present` is false contribute nothing.
AngleResult block_angle(std::span<const Subspace> factors, std::span<const std::size_t> left, std::size_t right,
                        int degree, int q, BlockFn block, const std::vector<bool>& present,
                        const Tolerances& tol) {
  std::vector<std::size_t> order;
  for (std::size_t i : left) {
    if (present[i]) order.push_back(i);
  }
  const std::size_t split = order.size();
  const bool right_present = present[right];
  if (right_present) order.push_back(right);

  std::vector<Index> sizes;
  std::vector<Matrix> diag_cache;
  Index total = 0;
  std::vector<Index> offsets;
  for (std::size_t a : order) {
    const Matrix k = factors[a].basis().adjoint() * factors[a].basis();
    diag_cache.push_back(block(k, degree, q));
    sizes.push_back(diag_cache.back().rows());
    offsets.push_back(total);
    total += sizes.back();
  }
  Matrix g(total, total);
  for (std::size_t x = 0; x < order.size(); ++x) {
    g.block(offsets[x], offsets[x], sizes[x], sizes[x]) = diag_cache[x];
    for (std::size_t y = x + 1; y < order.size(); ++y) {
      const Matrix k = factors[order[x]].basis().adjoint() * factors[order[y]].basis();
      const Matrix b = block(k, degree, q);
      g.block(offsets[x], offsets[y], sizes[x], sizes[y]) = b;
      g.block(offsets[y], offsets[x], sizes[y], sizes[x]) = b.adjoint();
    }
  }

  if (split == 0 || !right_present) {
    AngleResult r;
    r.method = AngleMethod::gram;
    const Index left_size = split == 0 ? 0 : offsets[split - 1] + sizes[split - 1];
    r.dim_left = gram_rank(g.topLeftCorner(left_size, left_size), tol);
    r.dim_right = right_present ? gram_rank(g.bottomRightCorner(total - left_size, total - left_size), tol) : 0;
    return r;
  }
  return friedrichs_cos_gram(GramSpan(std::move(sizes), std::move(g)), split, tol);
}

TensorAngle degree_zero_angle() {
  TensorAngle t;
  t.angle.method = AngleMethod::gram;
  t.angle.dim_left = t.angle.dim_right = t.angle.dim_intersection = 1;
  t.path = TensorPath::kronecker_gram;
  return t;
}

}  // namespace

TensorPowerSpan::TensorPowerSpan(std::vector<Subspace> f, int n) : degree(n), factors(std::move(f)) {
  require_common_ambient(factors, "TensorPowerSpan");
  if (n < 0) throw InputError("TensorPowerSpan: negative degree");
  ambient_d = factors.front().ambient_dim();
}

Index TensorPowerSpan::block_size(std::size_t i) const {
  return checked_power(factors.at(i).dim(), degree, std::numeric_limits<Index>::max() / 4);
}

Matrix TensorPowerSpan::gram_block(std::size_t i, std::size_t j) const {
  return kronecker_power(factors.at(i).basis().adjoint() * factors.at(j).basis(), degree);
}

GramSpan TensorPowerSpan::gram(std::span<const std::size_t> blocks) const {
  std::vector<Index> sizes;
  std::vector<Index> offsets;
  Index total = 0;
  for (std::size_t b : blocks) {
    offsets.push_back(total);
    sizes.push_back(block_size(b));
    total += sizes.back();
  }
  Matrix g(total, total);
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    for (std::size_t y = x; y < blocks.size(); ++y) {
      const Matrix b = gram_block(blocks[x], blocks[y]);
      g.block(offsets[x], offsets[y], sizes[x], sizes[y]) = b;
      if (y != x) g.block(offsets[y], offsets[x], sizes[y], sizes[x]) = b.adjoint();
    }
  }
  return GramSpan(std::move(sizes), std::move(g));
}

Matrix TensorPowerSpan::materialize(std::size_t i) const { return kronecker_power(factors.at(i).basis(), degree); }

TensorAngle tensor_sum_angle(std::span<const Subspace> factors, std::span<const std::size_t> left,
                             std::size_t right, int degree, const FockOptions& options) {
  require_indices(factors, left, right, degree, "tensor_sum_angle");
  if (degree == 0) return degree_zero_angle();

  std::vector<std::size_t> used(left.begin(), left.end());
  used.push_back(right);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());

  const Index limit = std::max(options.gram_budget, options.small_gram);
  Index kron_dim = 0;
  bool small_factors = true;
  for (std::size_t i : used) {
    kron_dim += checked_power(factors[i].dim(), degree, limit);
    kron_dim = std::min(kron_dim, limit + 1);
    small_factors = small_factors && factors[i].dim() <= 2;
  }

  TensorPath path = options.path;
  if (path == TensorPath::automatic) {
    if (kron_dim <= options.small_gram) {
      path = TensorPath::kronecker_gram;
    } else if (small_factors) {
      path = TensorPath::isotypic;
    } else {
      path = TensorPath::kronecker_gram;
    }
  }
  if (path == TensorPath::isotypic && !small_factors) {
    throw PreconditionError("tensor_sum_angle: the isotypic path needs factors of dimension at most 2");
  }
  if (path == TensorPath::kronecker_gram && kron_dim > options.gram_budget) {
    std::ostringstream os;
    os << "tensor_sum_angle: degree " << degree << " needs a Kronecker Gram matrix larger than the budget "
       << options.gram_budget;
    throw BudgetError(os.str());
  }

  TensorAngle out;
  out.path = path;
  if (path == TensorPath::kronecker_gram) {
    std::vector<bool> present(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) present[i] = !factors[i].is_zero();
    out.angle = block_angle(factors, left, right, degree, 0, &kron_block, present, options.tol);
    return out;
  }

  // Isotypic path: the block q carries multiplicity C(n,q) - C(n,q-1).
  AngleResult total;
  total.method = AngleMethod::gram;
  for (int q = 0; 2 * q <= degree; ++q) {
    std::vector<bool> present(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      present[i] = factors[i].dim() == 2 || (q == 0 && factors[i].dim() == 1);
    }
    const AngleResult r = block_angle(factors, left, right, degree, q, &isotypic_block, present, options.tol);
    const auto mult = static_cast<Index>(binomial(degree, q) - (q > 0 ? binomial(degree, q - 1) : 0));
    total.cosine = std::max(total.cosine, r.cosine);
    total.dim_left += mult * r.dim_left;
    total.dim_right += mult * r.dim_right;
    total.dim_intersection += mult * r.dim_intersection;
  }
  out.angle = total;
  return out;
}

AngleResult symmetric_sum_angle(std::span<const Subspace> factors, std::span<const std::size_t> left,
                                std::size_t right, int degree, const Tolerances& tol) {
  require_indices(factors, left, right, degree, "symmetric_sum_angle");
  if (degree == 0) return degree_zero_angle().angle;
  std::vector<bool> present(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) present[i] = !factors[i].is_zero();
  auto sym_block = [](const Matrix& k, int n, int) { return symmetric_power(k, n); };
  return block_angle(factors, left, right, degree, 0, +sym_block, present, tol);
}

double tensor_power_angle(const Subspace& v1, const Subspace& v2, int degree, const FockOptions& options) {
  if (degree < 1) throw InputError("tensor_power_angle: degree must be at least 1");
  const std::vector<Subspace> factors{v1, v2};
  const std::size_t left[] = {0};
  const double value = tensor_sum_angle(factors, left, 1, degree, options).angle.cosine;

  const double c = friedrichs_cos(v1, v2, options.tol).cosine;
  const bool trivial = intersect(v1, v2, options.tol).is_zero();
  const double expected = trivial ? std::pow(c, degree) : c;
  if (std::abs(value - expected) > 1e-8) {
    std::ostringstream os;
    os << "tensor_power_angle: degree " << degree << " cosine " << value << " differs from "
       << (trivial ? "c^n = " : "c = ") << expected;
    throw ContractViolation(os.str());
  }
  return value;
}

GradedSubspace fock_graded(const Subspace& v, int max_degree, bool symmetric, Index budget) {
  if (max_degree < 0) throw InputError("fock_graded: negative max_degree");
  const Index d = v.ambient_dim();
  std::vector<Index> ambients;
  for (int n = 1; n <= max_degree; ++n) {
    const Index ambient = symmetric ? monomial_count(static_cast<int>(d), n) : checked_power(d, n, budget);
    if (ambient > budget) {
      std::ostringstream os;
      os << "fock_graded: degree " << n << " component has ambient dimension "
         << (symmetric ? std::to_string(ambient) : std::string("> ") + std::to_string(budget))
         << " beyond the materialisation budget " << budget << "; use the Gram path (tensor_sum_angle)";
      throw BudgetError(os.str());
    }
    ambients.push_back(ambient);
  }
  std::vector<Subspace> components;
  components.push_back(Subspace::full(1));
  for (int n = 1; n <= max_degree; ++n) {
    const Index ambient = ambients[static_cast<std::size_t>(n - 1)];
    if (v.is_zero()) {
      components.push_back(Subspace::zero(ambient));
      continue;
    }
    Matrix basis = symmetric ? symmetric_power(v.basis(), n) : kronecker_power(v.basis(), n);
    components.push_back(Subspace::from_orthonormal(std::move(basis), 1e-10));
  }
  return GradedSubspace(std::move(components));
}

Matrix symmetrizer(int d, int n, Index budget) {
  if (checked_power(d, n, budget) > budget) {
    std::ostringstream os;
    os << "symmetrizer: (C^" << d << ")^{⊗" << n << "} exceeds the budget " << budget;
    throw BudgetError(os.str());
  }
  const Matrix s = symmetric_embedding(d, n);
  return s * s.adjoint();
}

Matrix symmetrizer_by_permutations(int d, int n, Index budget) {
  if (d < 1 || n < 0) throw InputError("symmetrizer_by_permutations: need d >= 1 and n >= 0");
  const Index full = checked_power(d, n, budget);
  const double perms = factorial(n);
  if (full > budget || static_cast<double>(full) * perms > static_cast<double>(budget)) {
    std::ostringstream os;
    os << "symmetrizer_by_permutations: d^n * n! exceeds the budget " << budget;
    throw BudgetError(os.str());
  }
  Matrix q = Matrix::Zero(full, full);
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> letters(static_cast<std::size_t>(n));
  do {
    for (Index w = 0; w < full; ++w) {
      Index rest = w;
      for (int pos = n - 1; pos >= 0; --pos) {
        letters[static_cast<std::size_t>(pos)] = static_cast<int>(rest % d);
        rest /= d;
      }
      Index image = 0;
      for (int pos = 0; pos < n; ++pos) image = image * d + letters[static_cast<std::size_t>(sigma[static_cast<std::size_t>(pos)])];
      q(image, w) += 1.0 / perms;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return q;
}

std::vector<double> product_norm_decay(std::span<const Subspace> subspaces, int max_degree,
                                       const Tolerances& tol) {
  require_common_ambient(subspaces, "product_norm_decay");
  if (max_degree < 0) throw InputError("product_norm_decay: negative max_degree");
  Matrix t = subspaces.front().projector();
  for (std::size_t i = 1; i < subspaces.size(); ++i) t = (t * subspaces[i].projector()).eval();
  const double rho = operator_norm(t);
  const bool trivial = intersect_all(subspaces, tol).is_zero();
  if ((rho < 1.0 - tol.intersection) != trivial) {
    std::ostringstream os;
    os << "product_norm_decay: ||P_1...P_r|| = " << rho << " but the joint intersection is "
       << (trivial ? "trivial" : "nontrivial");
    throw ContractViolation(os.str());
  }
  std::vector<double> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(std::pow(rho, n));
  return out;
}

ReductionCheck reduction_formula_check(std::span<const Subspace> w, const Subspace& e, int degree,
                                       const FockOptions& options) {
  require_common_ambient(w, "reduction_formula_check");
  if (w.size() < 2) throw PreconditionError("reduction_formula_check: needs r >= 2 subspaces");
  if (e.ambient_dim() != w.front().ambient_dim()) throw InputError("reduction_formula_check: E has the wrong ambient dimension");
  if (e.is_zero()) throw PreconditionError("reduction_formula_check: E must be nonzero");
  if (degree < 1) throw InputError("reduction_formula_check: degree must be at least 1");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double overlap = cross_norm(w[i], e);
    if (overlap > options.tol.orthogonality) {
      std::ostringstream os;
      os << "reduction_formula_check: E is not orthogonal to W_" << i + 1 << " (overlap " << overlap << ")";
      throw PreconditionError(os.str());
    }
  }

  const std::size_t r = w.size();
  std::vector<std::size_t> left(r - 1);
  std::iota(left.begin(), left.end(), std::size_t{0});

  std::vector<Subspace> extended;
  for (const auto& wi : w) {
    const std::array<Subspace, 2> pair{wi, e};
    extended.push_back(span_union(pair, options.tol.rank));
  }

  ReductionCheck check;
  check.lhs = tensor_sum_angle(extended, left, r - 1, degree, options).angle.cosine;
  for (int j = 1; j <= degree; ++j) {
    const double term = tensor_sum_angle(w, left, r - 1, j, options).angle.cosine;
    check.terms.push_back(term);
    check.rhs = std::max(check.rhs, term);
  }
  if (std::abs(check.lhs - check.rhs) > 1e-7) {
    std::ostringstream os;
    os << "reduction_formula_check: degree " << degree << " lhs " << check.lhs << " differs from rhs "
       << check.rhs;
    throw ContractViolation(os.str());
  }
  return check;
}

}  // namespace fockangle
