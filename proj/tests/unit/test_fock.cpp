#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockangle/errors.hpp"
#include "fockangle/fock.hpp"
#include "fockangle/sampling.hpp"
#include "fockangle/symmetric_power.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fockangle;
using namespace testing_support;

namespace {

/// Materialized c(Σ_{i∈left} V_i^{⊗n}, V_right^{⊗n}).
double materialized_sum_angle(const std::vector<Subspace>& v, const std::vector<std::size_t>& left, std::size_t right,
                              int n) {
  std::vector<Matrix> blocks;
  for (std::size_t i : left) blocks.push_back(oracle::kron_power(v[i].basis(), n));
  return oracle::friedrichs(oracle::hstack(blocks), oracle::kron_power(v[right].basis(), n));
}

}  // namespace

TEST_CASE("fock_graded component dimensions") {
  const GradedSubspace full = fock_graded(Subspace::full(3), 4, false);
  const GradedSubspace sym = fock_graded(Subspace::full(3), 4, true);
  for (int n = 0; n <= 4; ++n) {
    Index p = 1;
    for (int i = 0; i < n; ++i) p *= 3;
    CHECK(full.component(n).dim() == p);
    CHECK(full.component_dim(n) == p);
    CHECK(sym.component(n).dim() == static_cast<Index>(binomial(n + 2, 2)));
  }

  const GradedSubspace zero = fock_graded(Subspace::zero(2), 3, false);
  CHECK(zero.component(0).dim() == 1);
  for (int n = 1; n <= 3; ++n) CHECK(zero.component(n).is_zero());

  const GradedSubspace line = fock_graded(span({unit(2, 0)}), 3, true);
  REQUIRE(line.component(3).dim() == 1);
  // e1⊗e1⊗e1 is the first occupation vector (3, 0).
  CHECK(std::abs(std::abs(line.component(3).basis()(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("fock_graded budget error points at the Gram path") {
  try {
    fock_graded(Subspace::full(4), 8, false, 4096);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("Gram") != std::string::npos);
  }
}

TEST_CASE("symmetrizer examples") {
  CHECK((symmetrizer(3, 1) - Matrix::Identity(3, 3)).norm() < 1e-14);

  const Matrix q2 = symmetrizer(2, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q2);
  CHECK(eig.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(eig.eigenvalues()(1) - 1.0) < 1e-12);
  const Vector anti = (oracle::kron(unit(2, 0), unit(2, 1)) - oracle::kron(unit(2, 1), unit(2, 0))) / std::sqrt(2.0);
  CHECK((q2 * anti).norm() < 1e-14);

  const Matrix q3 = symmetrizer(2, 3);
  CHECK((q3 - oracle::permutation_symmetrizer(2, 3)).norm() < 1e-12);
  CHECK(std::abs(q3.trace().real() - 4.0) < 1e-12);
  CHECK_THROWS_AS(symmetrizer(4, 8, 4096), BudgetError);
}

TEST_CASE("property: symmetrizer is a projection commuting with tensor powers of projections") {
  Rng rng(21);
  for (int d = 1; d <= 3; ++d) {
    for (int n = 1; n <= 5; ++n) {
      const Matrix q = symmetrizer(d, n);
      CHECK((q * q - q).norm() < 1e-10);
      CHECK((q - q.adjoint()).norm() < 1e-10);
      CHECK((q - symmetrizer_by_permutations(d, n)).norm() < 1e-10);
      CHECK((q - oracle::permutation_symmetrizer(d, n)).norm() < 1e-10);
      CHECK(std::abs(q.trace().real() - static_cast<double>(binomial(n + d - 1, d - 1))) < 1e-9);

      const Subspace v = random_subspace(d, uniform_int(rng, 0, d), rng);
      const Matrix pv = oracle::kron_power(oracle::projector(v.basis()), n);
      CHECK((q * pv - pv * q).norm() < 1e-10);
      // Q P_{V^{⊗n}} is the projection onto the symmetric part V^n.
      const Subspace vn = fock_graded(v, n, true).component(n);
      const Matrix s = symmetric_embedding(d, n);
      const Matrix p_sym = s * vn.projector() * s.adjoint();
      CHECK((q * pv - p_sym).norm() < 1e-10);
    }
  }
}

TEST_CASE("Gram blocks are Kronecker powers of the cross Gram") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = uniform_int(rng, 2, 3);
    std::vector<Subspace> f{random_subspace(d, uniform_int(rng, 1, 2), rng), random_subspace(d, uniform_int(rng, 1, 2), rng)};
    for (int n = 0; n <= 4; ++n) {
      const TensorPowerSpan span(f, n);
      const Matrix g = span.gram_block(0, 1);
      const Matrix direct = oracle::kron_power(f[0].basis(), n).adjoint() * oracle::kron_power(f[1].basis(), n);
      CHECK((g - direct).norm() < 1e-12);
      CHECK((span.materialize(0) - oracle::kron_power(f[0].basis(), n)).norm() < 1e-12);
    }
  }
}

TEST_CASE("tensor_power_angle examples") {
  const Subspace a = line_at(0.0);
  const Subspace b = line_at(std::numbers::pi / 3);
  CHECK(std::abs(tensor_power_angle(a, b, 3) - 0.125) < 1e-12);
  CHECK(tensor_power_angle(a, a, 4) == 0.0);

  const Subspace p1 = span({unit(3, 0), unit(3, 1)});
  const Subspace p2 = span({unit(3, 0), vec({0, 1, 1})});
  const double c = friedrichs_cos(p1, p2).cosine;
  CHECK(std::abs(tensor_power_angle(p1, p2, 4) - c) < 1e-8);
  CHECK(std::abs(c - oracle::friedrichs(p1.basis(), p2.basis())) < 1e-10);
}

TEST_CASE("property: Gram path, isotypic path and materialized tensors agree") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 3;
    const int r = uniform_int(rng, 2, 3);
    std::vector<Subspace> v;
    for (int i = 0; i < r; ++i) v.push_back(random_subspace(d, uniform_int(rng, 1, 2), rng));
    std::vector<std::size_t> left;
    for (int i = 0; i + 1 < r; ++i) left.push_back(static_cast<std::size_t>(i));
    const std::size_t right = static_cast<std::size_t>(r - 1);
    for (int n = 1; n <= 4; ++n) {
      FockOptions kron;
      kron.path = TensorPath::kronecker_gram;
      FockOptions iso;
      iso.path = TensorPath::isotypic;
      const TensorAngle a = tensor_sum_angle(v, left, right, n, kron);
      const TensorAngle b = tensor_sum_angle(v, left, right, n, iso);
      const double m = materialized_sum_angle(v, left, right, n);
      CHECK(std::abs(a.angle.cosine - m) < 1e-8);
      CHECK(std::abs(b.angle.cosine - m) < 1e-8);
      CHECK(a.angle.dim_intersection == b.angle.dim_intersection);
      CHECK(a.angle.dim_left == b.angle.dim_left);
    }
  }
}

TEST_CASE("tensor_sum_angle at degree 0 and with an exhausted budget") {
  const std::vector<Subspace> v{line_at(0.0), line_at(1.0)};
  const std::vector<std::size_t> left{0};
  const TensorAngle zero = tensor_sum_angle(v, left, 1, 0);
  CHECK(zero.angle.cosine == 0.0);
  CHECK(zero.angle.dim_intersection == 1);

  Rng rng(1);
  const std::vector<Subspace> big{Subspace::full(3), random_subspace(3, 3, rng)};
  FockOptions tight;
  tight.gram_budget = 100;
  tight.small_gram = 10;
  try {
    tensor_sum_angle(big, left, 1, 5, tight);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
  FockOptions iso;
  iso.path = TensorPath::isotypic;
  CHECK_THROWS_AS(tensor_sum_angle(big, left, 1, 2, iso), PreconditionError);
}

TEST_CASE("property: fock angle identity and the essential-angle dichotomy") {
  Rng rng(606);
  for (int trial = 0; trial < 30; ++trial) {
    const bool forced = trial % 2 == 0;
    const Vector shared = random_gaussian(4, 1, rng).col(0);
    const Subspace v1 = forced ? random_containing(shared, 2, rng) : random_subspace(4, uniform_int(rng, 1, 2), rng);
    const Subspace v2 = forced ? random_containing(shared, 2, rng) : random_subspace(4, uniform_int(rng, 1, 2), rng);
    const double c = friedrichs_cos(v1, v2).cosine;
    double sup = 0.0;
    for (int n = 1; n <= 6; ++n) {
      const double cn = tensor_power_angle(v1, v2, n);
      sup = std::max(sup, cn);
      CHECK(std::abs(cn - (forced ? c : std::pow(c, n))) < 1e-8);
    }
    CHECK(std::abs(sup - c) < 1e-8);
  }
}

TEST_CASE("fock_graded profiles reproduce c(V1, V2) on materialized components") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const Subspace v1 = random_subspace(2, 1, rng);
    const Subspace v2 = random_subspace(2, 1, rng);
    const AngleProfile p = graded_angle(fock_graded(v1, 5, false), fock_graded(v2, 5, false));
    CHECK(std::abs(p.sup - friedrichs_cos(v1, v2).cosine) < 1e-8);
    const AngleProfile s = graded_angle(fock_graded(v1, 5, true), fock_graded(v2, 5, true));
    for (std::size_t i = 0; i < p.entries.size(); ++i) CHECK(std::abs(p.entries[i].cosine - s.entries[i].cosine) < 1e-9);
  }
}

TEST_CASE("product_norm_decay examples") {
  const std::vector<Subspace> one{span({unit(3, 0), unit(3, 1)})};
  for (double x : product_norm_decay(one, 4)) CHECK(std::abs(x - 1.0) < 1e-12);

  const std::vector<Subspace> planes{span({unit(3, 0), unit(3, 1)}), span({unit(3, 1), unit(3, 2)}),
                                     span({unit(3, 0), vec({0, 1, 1})})};
  const auto seq = product_norm_decay(planes, 6);
  Matrix prod = Matrix::Identity(3, 3);
  for (const auto& p : planes) prod = prod * oracle::projector(p.basis());
  const double rho = oracle::norm2(prod);
  CHECK(rho < 1.0);
  for (int n = 0; n <= 6; ++n) CHECK(std::abs(seq[static_cast<std::size_t>(n)] - std::pow(rho, n)) < 1e-12);
  for (int n = 1; n <= 6; ++n) CHECK(seq[static_cast<std::size_t>(n)] < seq[static_cast<std::size_t>(n - 1)]);

  const std::vector<Subspace> shared{span({unit(3, 0), unit(3, 1)}), span({unit(3, 0), unit(3, 2)})};
  for (double x : product_norm_decay(shared, 3)) CHECK(std::abs(x - 1.0) < 1e-12);
}

TEST_CASE("reduction_formula_check examples") {
  const Subspace e3 = span({unit(3, 2)});
  const std::vector<Subspace> orth{span({unit(3, 0)}), span({unit(3, 1)})};
  const ReductionCheck zero = reduction_formula_check(orth, e3, 3);
  CHECK(zero.lhs == doctest::Approx(0.0));
  CHECK(zero.rhs == doctest::Approx(0.0));

  const std::vector<Subspace> lines{embed(line_at(0.0), 3, 0), embed(line_at(std::numbers::pi / 3), 3, 0)};
  const ReductionCheck r = reduction_formula_check(lines, e3, 2);
  CHECK(std::abs(r.lhs - 0.5) < 1e-10);
  CHECK(std::abs(r.rhs - 0.5) < 1e-10);
  REQUIRE(r.terms.size() == 2);
  CHECK(std::abs(r.terms[1] - 0.25) < 1e-10);
  // Materialized in C^9.
  std::vector<Subspace> with_e;
  for (const auto& w : lines) {
    const std::vector<Subspace> pair{w, e3};
    with_e.push_back(span_union(pair));
  }
  CHECK(std::abs(r.lhs - materialized_sum_angle(with_e, {0}, 1, 2)) < 1e-10);

  const std::vector<Subspace> bad{span({unit(3, 0)}), span({vec({0, 1, 1})})};
  CHECK_THROWS_AS(reduction_formula_check(bad, e3, 2), PreconditionError);
  CHECK_THROWS_AS(reduction_formula_check(std::vector<Subspace>{orth[0]}, e3, 2), PreconditionError);
}

TEST_CASE("property: reduction formula for random lines with a W prefix") {
  Rng rng(88);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Subspace> w;
    for (int i = 0; i < 3; ++i) w.push_back(embed(random_subspace(3, 1, rng), 4, 0));
    const Subspace e = span({unit(4, 3)});
    const ReductionCheck r = reduction_formula_check(w, e, 3);
    CHECK(std::abs(r.lhs - r.rhs) < 1e-7);
    std::vector<Subspace> with_e;
    for (const auto& wi : w) {
      const std::vector<Subspace> pair{wi, e};
      with_e.push_back(span_union(pair));
    }
    CHECK(std::abs(r.lhs - materialized_sum_angle(with_e, {0, 1}, 2, 3)) < 1e-7);

    // General prefix k: c(Σ W_i^{⊗k} ⊗ (W_i ⊕ E)^{⊗n}, ...) = max_{k<=j<=k+n} c(Σ W_i^{⊗j}, W_r^{⊗j}) with j >= 1.
    const int k = 1;
    const int n = 2;
    std::vector<Matrix> left;
    for (int i = 0; i < 2; ++i) left.push_back(oracle::kron(oracle::kron_power(w[i].basis(), k), oracle::kron_power(with_e[i].basis(), n)));
    const Matrix right = oracle::kron(oracle::kron_power(w[2].basis(), k), oracle::kron_power(with_e[2].basis(), n));
    const double lhs = oracle::friedrichs(oracle::hstack(left), right);
    double rhs = 0.0;
    for (int j = k; j <= k + n; ++j) rhs = std::max(rhs, materialized_sum_angle(w, {0, 1}, 2, j));
    CHECK(std::abs(lhs - rhs) < 1e-7);
  }
}
