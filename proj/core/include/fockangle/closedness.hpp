#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fockangle/drury_arveson.hpp"
#include "fockangle/fock.hpp"
#include "fockangle/graded.hpp"

namespace fockangle {

struct ReducedFamily {
  /// V = V_1 ∩ ... ∩ V_r.
  Subspace joint;
  /// W_i = V_i ⊖ V.
  std::vector<Subspace> w;
};

/// Splits off the joint intersection; throws ContractViolation if the W_i
/// still meet nontrivially.
ReducedFamily reduce_joint_intersection(std::span<const Subspace> v, const Tolerances& tol = {});

/// Left sum Σ_{i∈left} X_i against the single summand X_right (0-based indices).
struct Split {
  std::vector<std::size_t> left;
  std::size_t right = 0;

  /// "V1+V2|V3" style label with 1-based indices and the given prefix.
  std::string key(const std::string& prefix = "V") const;
};

/// r <= 4: every nonempty subset of the other indices against each index.
/// r > 4: all-but-j against j for each j, plus the full split with one left
/// summand omitted.
std::vector<Split> enumerate_splits(std::size_t r);

/// The split (0..r-2 | r-1).
Split full_split(std::size_t r);

struct DossierOptions {
  int max_degree = 8;
  double margin = 0.02;
  std::optional<int> tail_start;
  FockOptions fock;
  std::uint64_t seed = 0;
  /// Largest ambient dimension materialised for cross-checks.
  Index budget = 4096;
  /// Degrees up to which the Gram path is cross-checked against materialised tensors.
  int materialize_max_degree = 4;
  TrendOptions trend;

  int effective_tail_start() const { return tail_start.value_or(default_tail_start(max_degree)); }
};

struct ReductionRow {
  std::string split;
  int degree = 0;
  /// Degree-n cosine of the original family.
  double unreduced = 0.0;
  /// max over 1 <= j <= n of the degree-j cosine of the reduced family.
  double reduced_max = 0.0;
};

struct OmittedSplitRow {
  int degree = 0;
  /// c(Σ_{i<r} W_i^{⊗n}, W_r^{⊗n}).
  double full = 0.0;
  /// max_i of the same cosine with W_i left out of the sum (0 for r = 2).
  double max_omitted = 0.0;
  bool holds = true;
  bool tail = false;
};

struct CrossCheckRow {
  std::string what;
  int degree = 0;
  double value = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
};

struct ClosednessDossier {
  std::string kind;
  std::size_t r = 0;
  Index ambient_d = 0;
  int max_degree = 0;
  int tail_start = 0;
  double margin = 0.0;

  std::optional<Index> joint_intersection_dim;
  bool reduced = false;
  std::string reduction_statement;

  std::map<std::string, AngleProfile> profiles;
  std::map<std::string, AngleProfile> reduced_profiles;
  std::map<std::string, std::string> paths;
  std::vector<ReductionRow> reduction_rows;

  std::optional<double> rho;
  std::vector<double> compactness_decay;

  std::vector<OmittedSplitRow> omitted_split_rows;
  /// Whether the inequality holds at every degree >= tail_start.
  std::optional<bool> omitted_split_tail_holds;
  std::vector<int> low_degree_violations;

  std::vector<CrossCheckRow> cross_checks;
  /// Full-Fock degrees skipped by budget when comparing with symmetric components.
  std::vector<int> skipped_degrees;

  Verdict verdict = Verdict::inconclusive;
};

/// Dossier for F(V_1) + ... + F(V_r) over C^d, computed through Gram matrices.
ClosednessDossier fock_sum_dossier(std::span<const Subspace> v, const DossierOptions& options = {});

/// An ideal given either as the vanishing ideal of a subspace or by explicit generators.
using IdealInput = std::variant<Subspace, HomogeneousIdeal>;

/// Dossier for the symmetric (polynomial) side: coinvariant components of the
/// J_i, equivalently the ideal components, whose angles agree.
ClosednessDossier ideal_sum_dossier(std::span<const IdealInput> ideals, const DossierOptions& options = {});

/// f_n = z^{n-2}(y² + xz) and g_n = z^{n-1} x in C[x, y, z].
HomogeneousPoly example_f(int n);
HomogeneousPoly example_g(int n);

struct ExampleRow {
  int degree = 0;
  double f_norm_sq = 0.0;
  double f_norm_sq_closed = 0.0;
  double inner = 0.0;
  double g_norm_sq = 0.0;
  double normalized = 0.0;
  double normalized_closed = 0.0;
  double cosine = 0.0;
  Index dim_left = 0;
  Index dim_right = 0;
  Index dim_intersection = 0;
  /// Largest |⟨f_n, h⟩| and |⟨g_n, h⟩| over unit h in the degree-n part of ⟨x²z + xy²⟩.
  double overlap_with_intersection = 0.0;
  /// Distance between I_n ∩ J_n and the degree-n part of ⟨x²z + xy²⟩.
  double intersection_distance = 0.0;
};

struct ExampleReport {
  std::vector<ExampleRow> rows;
  AngleProfile profile;
  Verdict verdict = Verdict::inconclusive;
  double margin = 0.0;
};

/// The pair I = ⟨y² + xz⟩, J = ⟨x⟩ with max_degree >= 2, checked against the
/// closed forms (n+1)/(n(n-1)), 1/n and sqrt((n-1)/(n+1)).
ExampleReport nonclosed_example(int max_degree, double margin, const Tolerances& tol = {},
                                std::optional<int> tail_start = std::nullopt);

}  // namespace fockangle
