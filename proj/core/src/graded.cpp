#include "fockangle/graded.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fockangle/errors.hpp"

namespace fockangle {

GradedSubspace::GradedSubspace(std::vector<Subspace> components) : components_(std::move(components)) {
  if (components_.empty()) throw InputError("GradedSubspace: needs at least the degree-0 component");
  const Subspace& h0 = components_.front();
  if (h0.ambient_dim() != 1) throw InputError("GradedSubspace: degree-0 component must live in C");
}

const Subspace& GradedSubspace::component(int degree) const {
  if (degree < 0 || degree > max_degree()) {
    std::ostringstream os;
    os << "GradedSubspace: degree " << degree << " outside 0.." << max_degree();
    throw InputError(os.str());
  }
  return components_[static_cast<std::size_t>(degree)];
}

std::string_view to_string(Trend trend) {
  switch (trend) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::plateau: return "plateau";
    case Trend::oscillating: return "oscillating";
  }
  return "unknown";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::closed_with_margin: return "closed_with_margin";
    case Verdict::suspected_not_closed: return "suspected_not_closed";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

int default_tail_start(int max_degree) { return (max_degree + 1) / 2; }

namespace {

// Least-squares fit y = a + b x; returns {a, b}.
std::array<double, 2> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double b = sxx > 0 ? sxy / sxx : 0.0;
  return {my - b * mx, b};
}

}  // namespace

AngleProfile make_profile(std::vector<ProfileEntry> entries, int tail_start, const TrendOptions& options) {
  AngleProfile p;
  p.entries = std::move(entries);
  p.tail_start = tail_start;
  if (p.entries.empty()) return p;

  for (const auto& e : p.entries) {
    p.sup = std::max(p.sup, e.cosine);
    if (e.degree >= tail_start) p.tail_sup = std::max(p.tail_sup, e.cosine);
  }

  const int max_degree = p.entries.back().degree;
  const std::size_t window =
      std::min(p.entries.size(), static_cast<std::size_t>(std::max(3, max_degree / 3)));
  p.window = static_cast<int>(window);
  const auto first = p.entries.end() - static_cast<std::ptrdiff_t>(window);

  std::vector<double> x, y, inv_x, inv_y;
  for (auto it = first; it != p.entries.end(); ++it) {
    x.push_back(it->degree);
    y.push_back(it->cosine);
    if (it->degree > 0) {
      inv_x.push_back(1.0 / it->degree);
      inv_y.push_back(it->cosine);
    }
  }

  if (window < 2) {
    p.trend = Trend::plateau;
    p.extrapolated_limit = y.back();
    return p;
  }

  const double slope = fit_line(x, y)[1];
  p.extrapolated_limit = inv_x.size() >= 2 ? fit_line(inv_x, inv_y)[0] : y.back();

  if (std::abs(slope) < options.plateau_slope) {
    p.trend = Trend::plateau;
  } else {
    bool up = false, down = false;
    for (std::size_t i = 1; i < y.size(); ++i) {
      const double step = y[i] - y[i - 1];
      if (step > options.plateau_slope) up = true;
      if (step < -options.plateau_slope) down = true;
    }
    if (up && down) {
      p.trend = Trend::oscillating;
    } else {
      p.trend = slope > 0 ? Trend::increasing : Trend::decreasing;
    }
  }
  return p;
}

AngleProfile graded_angle(const GradedSubspace& m, const GradedSubspace& n, std::optional<int> tail_start,
                          const Tolerances& tol, bool include_degree_zero, const TrendOptions& trend) {
  if (m.max_degree() != n.max_degree()) throw InputError("graded_angle: max_degree mismatch");
  const int max_degree = m.max_degree();
  const int start = include_degree_zero ? 0 : 1;
  const int tail = tail_start.value_or(default_tail_start(max_degree));
  if (tail > max_degree) throw InputError("graded_angle: tail_start exceeds max_degree");

  std::vector<ProfileEntry> entries;
  for (int d = start; d <= max_degree; ++d) {
    if (m.component_dim(d) != n.component_dim(d)) {
      std::ostringstream os;
      os << "graded_angle: component dimension mismatch at degree " << d << " (" << m.component_dim(d)
         << " vs " << n.component_dim(d) << ")";
      throw InputError(os.str());
    }
    const AngleResult r = friedrichs_cos(m.component(d), n.component(d), tol);
    entries.push_back({d, r.cosine, r.dim_left, r.dim_right, r.dim_intersection});
  }
  return make_profile(std::move(entries), tail, trend);
}

Verdict closedness_verdict(const AngleProfile& profile, double margin) {
  if (profile.entries.empty() || profile.max_degree() < profile.tail_start + 3) {
    return Verdict::inconclusive;
  }
  const double ceiling = 1.0 - margin;
  if (profile.trend == Trend::increasing &&
      std::max(profile.tail_sup, profile.extrapolated_limit) > ceiling) {
    return Verdict::suspected_not_closed;
  }
  if (profile.sup <= ceiling) return Verdict::closed_with_margin;
  return Verdict::inconclusive;
}

Verdict worst(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::closed_with_margin: return 0;
      case Verdict::inconclusive: return 1;
      case Verdict::suspected_not_closed: return 2;
    }
    return 1;
  };
  return rank(a) >= rank(b) ? a : b;
}

double orthogonal_block_max(const Subspace& m1, const Subspace& n1, const Subspace& m2, const Subspace& n2,
                            const Tolerances& tol) {
  struct Pair {
    const Subspace* a;
    const Subspace* b;
    const char* name;
  };
  const std::array<Pair, 4> pairs{{{&m1, &m2, "M1 ⊥ M2"},
                                   {&m1, &n2, "M1 ⊥ N2"},
                                   {&m2, &n1, "M2 ⊥ N1"},
                                   {&n1, &n2, "N1 ⊥ N2"}}};
  for (const auto& p : pairs) {
    const double overlap = cross_norm(*p.a, *p.b);
    if (overlap > tol.orthogonality) {
      std::ostringstream os;
      os << "orthogonal_block_max: " << p.name << " violated (overlap " << overlap << ")";
      throw PreconditionError(os.str());
    }
  }
  const std::array<Subspace, 2> left{m1, m2};
  const std::array<Subspace, 2> right{n1, n2};
  const double joint = friedrichs_cos(span_union(left, tol.rank), span_union(right, tol.rank), tol).cosine;
  const double expected = std::max(friedrichs_cos(m1, n1, tol).cosine, friedrichs_cos(m2, n2, tol).cosine);
  if (std::abs(joint - expected) > 1e-9) {
    std::ostringstream os;
    os << "orthogonal_block_max: c of the direct sums = " << joint << " but block max = " << expected;
    throw ContractViolation(os.str());
  }
  return joint;
}

}  // namespace fockangle
