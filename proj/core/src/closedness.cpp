#include "fockangle/closedness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fockangle/errors.hpp"
#include "fockangle/symmetric_power.hpp"

namespace fockangle {

ReducedFamily reduce_joint_intersection(std::span<const Subspace> v, const Tolerances& tol) {
  if (v.empty()) throw InputError("reduce_joint_intersection: empty subspace list");
  ReducedFamily out{intersect_all(v, tol), {}};
  for (const auto& vi : v) out.w.push_back(difference(vi, out.joint, tol.rank));
  const Subspace rest = intersect_all(out.w, tol);
  if (!rest.is_zero()) {
    std::ostringstream os;
    os << "reduce_joint_intersection: reduced subspaces still share a " << rest.dim() << "-dimensional intersection";
    throw ContractViolation(os.str());
  }
  return out;
}

std::string Split::key(const std::string& prefix) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < left.size(); ++i) os << (i ? "+" : "") << prefix << left[i] + 1;
  os << '|' << prefix << right + 1;
  return os.str();
}

std::vector<Split> enumerate_splits(std::size_t r) {
  std::vector<Split> out;
  if (r < 2) return out;
  if (r <= 4) {
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < r; ++i) {
        if (i != j) others.push_back(i);
      }
      const std::size_t subsets = std::size_t{1} << others.size();
      for (std::size_t mask = 1; mask < subsets; ++mask) {
        Split s;
        s.right = j;
        for (std::size_t b = 0; b < others.size(); ++b) {
          if (mask & (std::size_t{1} << b)) s.left.push_back(others[b]);
        }
        out.push_back(std::move(s));
      }
    }
    return out;
  }
  for (std::size_t j = 0; j < r; ++j) {
    Split s;
    s.right = j;
    for (std::size_t i = 0; i < r; ++i) {
      if (i != j) s.left.push_back(i);
    }
    out.push_back(std::move(s));
  }
  const Split full = full_split(r);
  for (std::size_t omit = 0; omit + 1 < r; ++omit) {
    Split s;
    s.right = full.right;
    for (std::size_t i : full.left) {
      if (i != omit) s.left.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Split full_split(std::size_t r) {
  Split s;
  s.right = r - 1;
  s.left.resize(r - 1);
  std::iota(s.left.begin(), s.left.end(), std::size_t{0});
  return s;
}

namespace {

void require_family(std::span<const Subspace> v, const DossierOptions& options, const char* op) {
  if (v.size() < 2) {
    std::ostringstream os;
    os << op << ": needs at least two subspaces";
    throw InputError(os.str());
  }
  for (const auto& s : v) {
    if (s.ambient_dim() != v.front().ambient_dim()) {
      std::ostringstream os;
      os << op << ": ambient dimension mismatch (" << s.ambient_dim() << " vs " << v.front().ambient_dim() << ")";
      throw InputError(os.str());
    }
  }
  if (options.max_degree < 1) throw InputError(std::string(op) + ": max_degree must be at least 1");
  if (options.effective_tail_start() > options.max_degree) {
    throw InputError(std::string(op) + ": tail_start exceeds max_degree");
  }
}

struct SplitProfiles {
  std::map<std::string, AngleProfile> profiles;
  std::map<std::string, std::string> paths;
};

SplitProfiles tensor_profiles(std::span<const Subspace> factors, const std::vector<Split>& splits,
                              const std::string& prefix, const DossierOptions& options) {
  SplitProfiles out;
  for (const auto& split : splits) {
    std::vector<ProfileEntry> entries;
    std::vector<std::string> used;
    for (int n = 1; n <= options.max_degree; ++n) {
      const TensorAngle t = tensor_sum_angle(factors, split.left, split.right, n, options.fock);
      entries.push_back({n, t.angle.cosine, t.angle.dim_left, t.angle.dim_right, t.angle.dim_intersection});
      const std::string name(to_string(t.path));
      if (std::find(used.begin(), used.end(), name) == used.end()) used.push_back(name);
    }
    std::string path;
    for (const auto& u : used) path += (path.empty() ? "" : "+") + u;
    const std::string key = split.key(prefix);
    out.profiles.emplace(key, make_profile(std::move(entries), options.effective_tail_start(), options.trend));
    out.paths.emplace(key, path);
  }
  return out;
}

double cosine_at(const AngleProfile& p, int degree) {
  for (const auto& e : p.entries) {
    if (e.degree == degree) return e.cosine;
  }
  throw InputError("cosine_at: degree missing from profile");
}

Verdict worst_verdict(const std::map<std::string, AngleProfile>& profiles, double margin) {
  Verdict v = Verdict::closed_with_margin;
  for (const auto& [key, p] : profiles) v = worst(v, closedness_verdict(p, margin));
  return v;
}

void record_check(ClosednessDossier& d, std::string what, int degree, double value, double reference,
                  double tolerance) {
  if (!(std::abs(value - reference) <= tolerance)) {
    std::ostringstream os;
    os << what << " at degree " << degree << ": " << value << " vs " << reference << " (tolerance " << tolerance
       << ")";
    throw ContractViolation(os.str());
  }
  d.cross_checks.push_back({std::move(what), degree, value, reference, tolerance});
}

Index checked_pow(Index base, int exponent, Index limit) {
  Index out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > limit / std::max<Index>(base, 1)) return limit + 1;
    out *= base;
  }
  return out;
}

// Omitted-split rows on the reduced family: full split against the same split with
// each left summand omitted.
void omitted_split_rows(ClosednessDossier& d, std::span<const Subspace> w, const std::map<std::string, AngleProfile>& wprof,
                        const std::string& prefix, const DossierOptions& options) {
  const std::size_t r = w.size();
  const Split full = full_split(r);
  const AngleProfile& full_profile = wprof.at(full.key(prefix));
  bool tail_ok = true;
  for (int n = 1; n <= options.max_degree; ++n) {
    OmittedSplitRow row;
    row.degree = n;
    row.full = cosine_at(full_profile, n);
    for (std::size_t omit : full.left) {
      Split s;
      s.right = full.right;
      for (std::size_t i : full.left) {
        if (i != omit) s.left.push_back(i);
      }
      if (s.left.empty()) continue;
      row.max_omitted = std::max(row.max_omitted, cosine_at(wprof.at(s.key(prefix)), n));
    }
    row.holds = row.full <= row.max_omitted + 1e-7;
    row.tail = n >= options.effective_tail_start();
    if (!row.holds) {
      if (row.tail) {
        tail_ok = false;
      } else {
        d.low_degree_violations.push_back(n);
      }
    }
    d.omitted_split_rows.push_back(row);
  }
  d.omitted_split_tail_holds = tail_ok;
}

constexpr const char* kReductionStatement =
    "F(V_1)+...+F(V_r) is closed if and only if F(W_1)+...+F(W_r) is closed, where W_i = V_i minus "
    "(V_1 ∩ ... ∩ V_r); per degree c_n(V) = max_{1<=j<=n} c_j(W)";

}  // namespace

ClosednessDossier fock_sum_dossier(std::span<const Subspace> v, const DossierOptions& options) {
  require_family(v, options, "fock_sum_dossier");
  const Tolerances& tol = options.fock.tol;
  ClosednessDossier d;
  d.kind = "fock";
  d.r = v.size();
  d.ambient_d = v.front().ambient_dim();
  d.max_degree = options.max_degree;
  d.tail_start = options.effective_tail_start();
  d.margin = options.margin;

  const ReducedFamily red = reduce_joint_intersection(v, tol);
  d.joint_intersection_dim = red.joint.dim();
  d.reduced = !red.joint.is_zero();
  d.reduction_statement = kReductionStatement;

  const std::vector<Split> splits = enumerate_splits(v.size());
  SplitProfiles original = tensor_profiles(v, splits, "V", options);
  d.profiles = std::move(original.profiles);
  d.paths = std::move(original.paths);

  const Split full = full_split(v.size());
  for (int n = 1; n <= std::min(options.max_degree, options.materialize_max_degree); ++n) {
    if (checked_pow(d.ambient_d, n, options.budget) > options.budget) break;
    const TensorPowerSpan span(std::vector<Subspace>(v.begin(), v.end()), n);
    std::vector<Subspace> left;
    for (std::size_t i : full.left) left.push_back(orthonormalize(span.materialize(i), tol.rank));
    const Subspace right = orthonormalize(span.materialize(full.right), tol.rank);
    const double materialized = friedrichs_cos(span_union(left, tol.rank), right, tol).cosine;
    record_check(d, "gram path vs materialized tensors (" + full.key("V") + ")", n,
                 cosine_at(d.profiles.at(full.key("V")), n), materialized, 1e-8);
  }

  const std::map<std::string, AngleProfile>* wprof = &d.profiles;
  std::string wprefix = "V";
  if (d.reduced) {
    SplitProfiles reduced = tensor_profiles(red.w, splits, "W", options);
    d.reduced_profiles = std::move(reduced.profiles);
    wprof = &d.reduced_profiles;
    wprefix = "W";
    for (const auto& split : splits) {
      const AngleProfile& p = d.profiles.at(split.key("V"));
      const AngleProfile& q = d.reduced_profiles.at(split.key("W"));
      double running = 0.0;
      for (int n = 1; n <= options.max_degree; ++n) {
        running = std::max(running, cosine_at(q, n));
        const double unreduced = cosine_at(p, n);
        if (std::abs(unreduced - running) > 1e-7) {
          std::ostringstream os;
          os << "fock_sum_dossier: reduction identity fails for " << split.key("V") << " at degree " << n << " ("
             << unreduced << " vs " << running << ")";
          throw ContractViolation(os.str());
        }
        d.reduction_rows.push_back({split.key("V"), n, unreduced, running});
      }
    }
  }

  d.compactness_decay = product_norm_decay(red.w, options.max_degree, tol);
  d.rho = d.compactness_decay.size() > 1 ? d.compactness_decay[1] : 1.0;

  omitted_split_rows(d, red.w, *wprof, wprefix, options);
  d.verdict = worst_verdict(d.profiles, options.margin);
  return d;
}

ClosednessDossier ideal_sum_dossier(std::span<const IdealInput> ideals, const DossierOptions& options) {
  if (ideals.size() < 2) throw InputError("ideal_sum_dossier: needs at least two ideals");
  if (options.max_degree < 1) throw InputError("ideal_sum_dossier: max_degree must be at least 1");
  if (options.effective_tail_start() > options.max_degree) {
    throw InputError("ideal_sum_dossier: tail_start exceeds max_degree");
  }
  const Tolerances& tol = options.fock.tol;

  auto variables = [](const IdealInput& in) {
    return std::holds_alternative<Subspace>(in) ? static_cast<int>(std::get<Subspace>(in).ambient_dim())
                                                 : std::get<HomogeneousIdeal>(in).variables();
  };
  const int dvars = variables(ideals.front());
  bool all_subspaces = true;
  std::vector<Subspace> subspaces;
  std::vector<HomogeneousIdeal> resolved;
  for (std::size_t i = 0; i < ideals.size(); ++i) {
    if (variables(ideals[i]) != dvars) {
      std::ostringstream os;
      os << "ideal_sum_dossier: ideal " << i + 1 << " has " << variables(ideals[i]) << " variables, expected "
         << dvars;
      throw InputError(os.str());
    }
    if (const auto* s = std::get_if<Subspace>(&ideals[i])) {
      subspaces.push_back(*s);
      resolved.push_back(vanishing_ideal(*s));
    } else {
      all_subspaces = false;
      resolved.push_back(std::get<HomogeneousIdeal>(ideals[i]));
    }
  }

  ClosednessDossier d;
  d.kind = "ideal";
  d.r = ideals.size();
  d.ambient_d = dvars;
  d.max_degree = options.max_degree;
  d.tail_start = options.effective_tail_start();
  d.margin = options.margin;
  d.reduction_statement = kReductionStatement;

  // components[n - 1][i]: the degree-n coinvariant component of J_i.
  std::vector<std::vector<Subspace>> components;
  for (int n = 1; n <= options.max_degree; ++n) {
    std::vector<Subspace> row;
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      if (const auto* s = std::get_if<Subspace>(&ideals[i])) {
        Subspace sym = symmetric_component_da(*s, n);
        const Subspace co = coinvariant_component(resolved[i], n, tol.rank);
        const std::string label = "J" + std::to_string(i + 1);
        record_check(d, label + ": coinvariant component vs symmetric Fock component", n, subspace_distance(sym, co),
                     0.0, 1e-9);
        const Subspace kernels = kernel_power_span(*s, n, options.seed + 1000003u * i + static_cast<unsigned>(n));
        record_check(d, label + ": kernel-power span vs symmetric Fock component", n,
                     subspace_distance(sym, kernels), 0.0, 1e-8);
        row.push_back(std::move(sym));
      } else {
        row.push_back(coinvariant_component(resolved[i], n, tol.rank));
      }
    }
    components.push_back(std::move(row));
  }

  const std::vector<Split> splits = enumerate_splits(ideals.size());
  for (const auto& split : splits) {
    std::vector<ProfileEntry> entries;
    for (int n = 1; n <= options.max_degree; ++n) {
      const auto& comps = components[static_cast<std::size_t>(n - 1)];
      std::vector<Subspace> left;
      for (std::size_t i : split.left) left.push_back(comps[i]);
      const AngleResult a = friedrichs_cos(span_union(left, tol.rank), comps[split.right], tol);
      entries.push_back({n, a.cosine, a.dim_left, a.dim_right, a.dim_intersection});
      if (all_subspaces) {
        const AngleResult g = symmetric_sum_angle(subspaces, split.left, split.right, n, tol);
        record_check(d, "symmetric Gram path vs coinvariant components (" + split.key("J") + ")", n, g.cosine,
                     a.cosine, 1e-8);
        try {
          const double full = tensor_sum_angle(subspaces, split.left, split.right, n, options.fock).angle.cosine;
          if (a.cosine > full + 1e-9) {
            std::ostringstream os;
            os << "ideal_sum_dossier: symmetric cosine " << a.cosine << " exceeds the full Fock cosine " << full
               << " for " << split.key("J") << " at degree " << n;
            throw ContractViolation(os.str());
          }
        } catch (const BudgetError&) {
          if (std::find(d.skipped_degrees.begin(), d.skipped_degrees.end(), n) == d.skipped_degrees.end()) {
            d.skipped_degrees.push_back(n);
          }
        }
      }
    }
    d.profiles.emplace(split.key("J"), make_profile(std::move(entries), d.tail_start, options.trend));
    d.paths.emplace(split.key("J"), "coinvariant");
  }
  std::sort(d.skipped_degrees.begin(), d.skipped_degrees.end());

  if (ideals.size() == 2) {
    // c(M, N) = c(M^⊥, N^⊥): ideal components against coinvariant components.
    for (int n = 1; n <= options.max_degree; ++n) {
      const double ideal_side = friedrichs_cos(ideal_component(resolved[0], n, tol.rank),
                                               ideal_component(resolved[1], n, tol.rank), tol)
                                    .cosine;
      record_check(d, "ideal components vs coinvariant components", n, ideal_side,
                   cosine_at(d.profiles.at("J1|J2"), n), 1e-8);
    }
  }

  if (all_subspaces) {
    const ReducedFamily red = reduce_joint_intersection(subspaces, tol);
    d.joint_intersection_dim = red.joint.dim();
    d.reduced = !red.joint.is_zero();
    d.compactness_decay = product_norm_decay(red.w, options.max_degree, tol);
    d.rho = d.compactness_decay.size() > 1 ? d.compactness_decay[1] : 1.0;
  }

  d.verdict = worst_verdict(d.profiles, options.margin);
  return d;
}

HomogeneousPoly example_f(int n) {
  if (n < 2) throw InputError("example_f: degree must be at least 2");
  const HomogeneousPoly zpow = HomogeneousPoly::monomial(MultiIndex({0, 0, n - 2}));
  HomogeneousPoly q(3, 2);
  q.add_term(MultiIndex({0, 2, 0}), 1.0);
  q.add_term(MultiIndex({1, 0, 1}), 1.0);
  return zpow * q;
}

HomogeneousPoly example_g(int n) {
  if (n < 1) throw InputError("example_g: degree must be at least 1");
  return HomogeneousPoly::monomial(MultiIndex({1, 0, n - 1}));
}

ExampleReport nonclosed_example(int max_degree, double margin, const Tolerances& tol, std::optional<int> tail_start) {
  if (max_degree < 2) throw InputError("nonclosed_example: max_degree must be at least 2");
  HomogeneousPoly q(3, 2);
  q.add_term(MultiIndex({0, 2, 0}), 1.0);
  q.add_term(MultiIndex({1, 0, 1}), 1.0);
  const HomogeneousIdeal ideal_i(3, {q});
  const HomogeneousIdeal ideal_j(3, {HomogeneousPoly::monomial(MultiIndex({1, 0, 0}))});
  const HomogeneousIdeal ideal_ij(3, {HomogeneousPoly::monomial(MultiIndex({1, 0, 0})) * q});

  ExampleReport report;
  report.margin = margin;
  std::vector<ProfileEntry> entries;
  for (int n = 1; n <= max_degree; ++n) {
    const Subspace in = ideal_component(ideal_i, n, tol.rank);
    const Subspace jn = ideal_component(ideal_j, n, tol.rank);
    const AngleResult a = friedrichs_cos(in, jn, tol);
    entries.push_back({n, a.cosine, a.dim_left, a.dim_right, a.dim_intersection});
    if (n < 2) continue;

    const HomogeneousPoly f = example_f(n);
    const HomogeneousPoly g = example_g(n);
    ExampleRow row;
    row.degree = n;
    row.f_norm_sq = da_norm_sq(f);
    row.f_norm_sq_closed = static_cast<double>(n + 1) / (static_cast<double>(n) * (n - 1));
    row.inner = da_inner(f, g).real();
    row.g_norm_sq = da_norm_sq(g);
    row.normalized = row.inner / std::sqrt(row.f_norm_sq * row.g_norm_sq);
    row.normalized_closed = std::sqrt(static_cast<double>(n - 1) / (n + 1));
    row.cosine = a.cosine;
    row.dim_left = a.dim_left;
    row.dim_right = a.dim_right;
    row.dim_intersection = a.dim_intersection;

    const Subspace kn = ideal_component(ideal_ij, n, tol.rank);
    if (!kn.is_zero()) {
      const Vector fx = f.da_coordinates().normalized();
      const Vector gx = g.da_coordinates().normalized();
      row.overlap_with_intersection =
          std::max((kn.basis().adjoint() * fx).norm(), (kn.basis().adjoint() * gx).norm());
    }
    row.intersection_distance = subspace_distance(intersect(in, jn, tol), kn);

    const double one_over_n = 1.0 / n;
    const auto check = [n](const char* what, double value, double reference, double tolerance) {
      if (!(std::abs(value - reference) <= tolerance)) {
        std::ostringstream os;
        os << "nonclosed_example: " << what << " at degree " << n << " is " << value << ", expected " << reference;
        throw ContractViolation(os.str());
      }
    };
    check("||f_n||^2", row.f_norm_sq, row.f_norm_sq_closed, 1e-12);
    check("<f_n, g_n>", row.inner, one_over_n, 1e-12);
    check("||g_n||^2", row.g_norm_sq, one_over_n, 1e-12);
    check("normalised inner product", row.normalized, row.normalized_closed, 1e-12);
    check("overlap with the intersection ideal", row.overlap_with_intersection, 0.0, 1e-10);
    check("intersection component distance", row.intersection_distance, 0.0, 1e-8);
    if (row.cosine < row.normalized_closed - 1e-9) {
      std::ostringstream os;
      os << "nonclosed_example: cosine " << row.cosine << " at degree " << n << " is below the lower bound "
         << row.normalized_closed;
      throw ContractViolation(os.str());
    }
    report.rows.push_back(row);
  }
  report.profile = make_profile(std::move(entries), tail_start.value_or(default_tail_start(max_degree)));
  report.verdict = closedness_verdict(report.profile, margin);
  return report;
}

}  // namespace fockangle
