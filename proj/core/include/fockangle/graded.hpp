#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fockangle/subspace.hpp"

namespace fockangle {

/// Degree-indexed family of subspaces M_n of finite-dimensional components H_n.
class GradedSubspace {
public:
  /// `components[n]` is M ∩ H_n. The degree-0 component must be {0} or all of H_0 = C.
  explicit GradedSubspace(std::vector<Subspace> components);

  int max_degree() const { return static_cast<int>(components_.size()) - 1; }
  const Subspace& component(int degree) const;
  Index component_dim(int degree) const { return component(degree).ambient_dim(); }
  const std::vector<Subspace>& components() const { return components_; }

private:
  std::vector<Subspace> components_;
};

enum class Trend { increasing, decreasing, plateau, oscillating };
enum class Verdict { closed_with_margin, suspected_not_closed, inconclusive };

std::string_view to_string(Trend trend);
std::string_view to_string(Verdict verdict);

struct ProfileEntry {
  int degree = 0;
  double cosine = 0.0;
  Index dim_left = 0;
  Index dim_right = 0;
  Index dim_intersection = 0;
};

struct TrendOptions {
  /// |least-squares slope| per degree below which the window is a plateau.
  double plateau_slope = 1e-4;
};

/// Per-degree cosines with the summary statistics used for closedness verdicts.
struct AngleProfile {
  std::vector<ProfileEntry> entries;
  double sup = 0.0;
  int tail_start = 0;
  double tail_sup = 0.0;
  Trend trend = Trend::plateau;
  /// Degrees used for the trend and the extrapolation.
  int window = 0;
  /// Intercept L of the least-squares fit c_n ≈ L + b/n over the trend window.
  double extrapolated_limit = 0.0;

  int max_degree() const { return entries.empty() ? 0 : entries.back().degree; }
};

/// ceil(max_degree / 2).
int default_tail_start(int max_degree);

/// Summarises per-degree entries (sorted by degree) into a profile.
/// The trend window is the last max(3, max_degree / 3) entries.
AngleProfile make_profile(std::vector<ProfileEntry> entries, int tail_start,
                          const TrendOptions& options = {});

/// Per-degree Friedrichs cosines c(M_n, N_n). Degree 0 is skipped unless
/// `include_degree_zero` is set (both components are {0} or C there, so it
/// always contributes 0).
AngleProfile graded_angle(const GradedSubspace& m, const GradedSubspace& n,
                          std::optional<int> tail_start = std::nullopt,
                          const Tolerances& tol = {}, bool include_degree_zero = false,
                          const TrendOptions& trend = {});

/// Three-valued finite-degree closedness verdict:
///  - suspected_not_closed: trend increasing and max(tail_sup, extrapolated_limit) > 1 - margin;
///  - closed_with_margin:   otherwise, when sup <= 1 - margin;
///  - inconclusive:         everything else, including profiles shorter than tail_start + 3.
Verdict closedness_verdict(const AngleProfile& profile, double margin);

/// The more pessimistic of two verdicts (suspected > inconclusive > closed).
Verdict worst(Verdict a, Verdict b);

/// c(M1 ⊕ M2, N1 ⊕ N2) for M1⊥M2, M1⊥N2, M2⊥N1, N1⊥N2; checked against
/// max(c(M1,N1), c(M2,N2)).
double orthogonal_block_max(const Subspace& m1, const Subspace& n1, const Subspace& m2,
                            const Subspace& n2, const Tolerances& tol = {});

}  // namespace fockangle
