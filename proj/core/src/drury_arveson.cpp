#include "fockangle/drury_arveson.hpp"

#include <cmath>
#include <sstream>

#include "fockangle/errors.hpp"
#include "fockangle/sampling.hpp"
#include "fockangle/symmetric_power.hpp"

namespace fockangle {

HomogeneousIdeal::HomogeneousIdeal(int d, std::vector<HomogeneousPoly> generators)
    : d_(d), generators_(std::move(generators)) {
  if (d < 1) throw InputError("HomogeneousIdeal: need at least one variable");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].variables() != d) {
      std::ostringstream os;
      os << "HomogeneousIdeal: generator " << i + 1 << " has " << generators_[i].variables()
         << " variables, expected " << d;
      throw InputError(os.str());
    }
  }
}

HomogeneousIdeal vanishing_ideal(const Subspace& v) {
  const int d = static_cast<int>(v.ambient_dim());
  const Subspace perp = orthogonal_complement(v);
  std::vector<HomogeneousPoly> generators;
  for (Index c = 0; c < perp.dim(); ++c) {
    HomogeneousPoly p(d, 1);
    for (int i = 0; i < d; ++i) {
      std::vector<int> e(static_cast<std::size_t>(d), 0);
      e[static_cast<std::size_t>(i)] = 1;
      p.add_term(MultiIndex(std::move(e)), std::conj(perp.basis()(i, c)));
    }
    generators.push_back(std::move(p));
  }
  return HomogeneousIdeal(d, std::move(generators));
}

Subspace ideal_component(const HomogeneousIdeal& ideal, int n, double rank_tol) {
  if (n < 0) throw InputError("ideal_component: negative degree");
  const int d = ideal.variables();
  const Index size = monomial_count(d, n);
  std::vector<Vector> columns;
  for (const auto& g : ideal.generators()) {
    if (g.degree() > n || g.is_zero()) continue;
    const MonomialBasis multipliers(d, n - g.degree());
    for (const auto& m : multipliers.monomials()) columns.push_back((HomogeneousPoly::monomial(m) * g).da_coordinates());
  }
  Matrix span(size, static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) span.col(static_cast<Index>(j)) = columns[j];
  return orthonormalize(span, rank_tol);
}

Subspace coinvariant_component(const HomogeneousIdeal& ideal, int n, double rank_tol) {
  return orthogonal_complement(ideal_component(ideal, n, rank_tol), rank_tol);
}

Subspace symmetric_component_da(const Subspace& v, int n) {
  if (n < 0) throw InputError("symmetric_component_da: negative degree");
  const int d = static_cast<int>(v.ambient_dim());
  if (n == 0) return Subspace::full(1);
  if (v.is_zero()) return Subspace::zero(monomial_count(d, n));
  return Subspace::from_orthonormal(symmetric_power(v.basis(), n).conjugate(), 1e-10);
}

Subspace kernel_power_span(const Subspace& v, int n, std::uint64_t seed, double rank_tol) {
  if (n < 0) throw InputError("kernel_power_span: negative degree");
  const int d = static_cast<int>(v.ambient_dim());
  const Index size = monomial_count(d, n);
  if (v.is_zero()) return n == 0 ? Subspace::full(1) : Subspace::zero(size);
  const Index count = monomial_count(static_cast<int>(v.dim()), n) + 5;
  Rng rng(seed);
  Matrix span(size, count);
  for (Index j = 0; j < count; ++j) span.col(j) = kernel_power(random_unit_vector(v, rng), n).da_coordinates();
  return orthonormalize(span, rank_tol);
}

void LinearMapSpec::validate(double tol) const {
  if (!isometric_on) return;
  if (isometric_on->ambient_dim() != a.cols()) {
    throw InputError("LinearMapSpec: isometric_on lives in the wrong space for A");
  }
  const Matrix image = a * isometric_on->basis();
  const Matrix defect = image.adjoint() * image - Matrix::Identity(image.cols(), image.cols());
  const double err = defect.size() ? defect.cwiseAbs().maxCoeff() : 0.0;
  if (err > tol) {
    std::ostringstream os;
    os << "LinearMapSpec: A is not isometric on the declared subspace (defect " << err << ")";
    throw PreconditionError(os.str());
  }
}

Matrix composition_matrix(const LinearMapSpec& map, int n, const Subspace& domain) {
  if (n < 0) throw InputError("composition_matrix: negative degree");
  const int d_source = static_cast<int>(map.a.cols());
  const Index expected = monomial_count(d_source, n);
  if (domain.ambient_dim() != expected) {
    std::ostringstream os;
    os << "composition_matrix: domain has ambient dimension " << domain.ambient_dim() << ", expected " << expected
       << " (degree " << n << " over C^" << d_source << ")";
    throw InputError(os.str());
  }
  return symmetric_power(map.a.conjugate(), n) * domain.basis();
}

std::vector<CompositionRow> composition_norm_profile(const LinearMapSpec& map, std::span<const Subspace> subspaces,
                                                     int max_degree, const Tolerances& tol) {
  if (subspaces.empty()) throw InputError("composition_norm_profile: empty subspace list");
  if (max_degree < 1) throw InputError("composition_norm_profile: max_degree must be at least 1");
  for (std::size_t i = 0; i < subspaces.size(); ++i) {
    if (subspaces[i].ambient_dim() != map.a.cols()) {
      std::ostringstream os;
      os << "composition_norm_profile: V_" << i + 1 << " does not live in the domain of A";
      throw InputError(os.str());
    }
    try {
      LinearMapSpec{map.a, subspaces[i]}.validate(tol.orthogonality);
    } catch (const PreconditionError& e) {
      std::ostringstream os;
      os << "composition_norm_profile: V_" << i + 1 << ": " << e.what();
      throw PreconditionError(os.str());
    }
  }

  const double r = static_cast<double>(subspaces.size());
  std::vector<CompositionRow> rows;
  for (int n = 1; n <= max_degree; ++n) {
    std::vector<Subspace> components;
    for (const auto& v : subspaces) components.push_back(symmetric_component_da(v, n));
    const SpectralSum sum = sum_projection_spectral(components);
    CompositionRow row;
    row.degree = n;
    row.domain_dim = sum.sum.dim();
    if (!sum.smallest_positive) {
      rows.push_back(row);
      continue;
    }
    row.smallest_positive = *sum.smallest_positive;
    row.norm = operator_norm(composition_matrix(map, n, sum.sum));
    row.bound = r * std::sqrt(1.0 / row.smallest_positive);
    if (row.norm > row.bound * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "composition_norm_profile: degree " << n << " norm " << row.norm << " exceeds the bound " << row.bound;
      throw ContractViolation(os.str());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fockangle
