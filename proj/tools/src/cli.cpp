#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "io.hpp"
#include "report.hpp"

#include <fockangle/closedness.hpp>
#include <fockangle/drury_arveson.hpp>
#include <fockangle/errors.hpp>
#include <fockangle/fock.hpp>

namespace fockangle::cli {

namespace {

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<int> max_degree;
  double margin = 0.02;
  double rank_tol = Tolerances{}.rank;
  double intersection_tol = Tolerances{}.intersection;
  std::uint64_t seed = 0;
  Index budget = 4096;
  Index gram_budget = 2048;
  std::optional<int> tail_start;
  std::optional<int> dim;
  std::string format = "json";
  std::string out;
  std::string extension;
  std::string map;
  std::string tensor_path = "automatic";

  int degree() const { return max_degree.value_or(command == "paper-example" ? 12 : 8); }

  Tolerances tolerances() const {
    Tolerances t;
    t.rank = rank_tol;
    t.intersection = intersection_tol;
    return t;
  }

  FockOptions fock() const {
    FockOptions f;
    f.tol = tolerances();
    f.gram_budget = gram_budget;
    f.path = tensor_path == "kronecker" ? TensorPath::kronecker_gram
             : tensor_path == "isotypic" ? TensorPath::isotypic
                                         : TensorPath::automatic;
    return f;
  }
};

void validate(const Options& o) {
  if (o.degree() < 1) throw InputError("--max-degree must be at least 1");
  if (o.budget < 16) throw InputError("--budget must be at least 16");
  if (o.gram_budget < 1) throw InputError("--gram-budget must be positive");
  if (!(o.margin >= 0.0 && o.margin < 1.0)) throw InputError("--margin must lie in [0, 1)");
  if (!(o.rank_tol >= 0.0)) throw InputError("--rank-tol must be nonnegative");
  if (!(o.intersection_tol > 0.0 && o.intersection_tol < 1.0)) throw InputError("--intersection-tol must lie in (0, 1)");
  if (o.tail_start && (*o.tail_start < 1 || *o.tail_start > o.degree())) {
    throw InputError("--tail-start must lie in 1..max-degree");
  }
  if (o.dim && *o.dim < 1) throw InputError("--dim must be positive");
}

json config_echo(const Options& o) {
  const Tolerances t = o.tolerances();
  json c = json::object();
  c["command"] = o.command;
  c["inputs"] = o.inputs;
  c["max_degree"] = o.degree();
  c["tail_start"] = o.tail_start.value_or(default_tail_start(o.degree()));
  c["seed"] = o.seed;
  c["budget"] = o.budget;
  c["gram_budget"] = o.gram_budget;
  c["small_gram"] = FockOptions{}.small_gram;
  c["tensor_path"] = o.tensor_path;
  c["format"] = o.format;
  if (o.dim) c["dim"] = *o.dim;
  if (!o.extension.empty()) c["extension"] = o.extension;
  if (!o.map.empty()) c["map"] = o.map;
  c["tolerances"] = {{"rank_tol", t.rank},
                     {"intersection_tol", t.intersection},
                     {"orthogonality_tol", t.orthogonality},
                     {"gram_indefinite_tol", t.gram_indefinite},
                     {"margin", o.margin},
                     {"plateau_slope", TrendOptions{}.plateau_slope}};
  return c;
}

void require_inputs(const Options& o, std::size_t at_least, const char* what) {
  if (o.inputs.size() < at_least) {
    std::ostringstream os;
    os << o.command << ": expected at least " << at_least << " " << what << ", got " << o.inputs.size();
    throw InputError(os.str());
  }
}

std::vector<Subspace> load_subspaces(const Options& o) {
  std::vector<Subspace> out;
  for (const auto& path : o.inputs) out.push_back(read_subspace_file(path, o.rank_tol));
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].ambient_dim() != out.front().ambient_dim()) {
      std::ostringstream os;
      os << o.inputs[i] << ": ambient dimension " << out[i].ambient_dim() << " differs from " << o.inputs.front()
         << " (" << out.front().ambient_dim() << ")";
      throw InputError(os.str());
    }
  }
  return out;
}

json input_dims(const std::vector<Subspace>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back({{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}});
  return a;
}

const std::vector<std::string> kProfileColumns{"degree", "cosine", "dim_left", "dim_right", "dim_intersection"};

Table profile_table(const AngleProfile& p) {
  Table t{kProfileColumns, {}};
  for (const auto& e : p.entries) t.rows.push_back({e.degree, e.cosine, e.dim_left, e.dim_right, e.dim_intersection});
  return t;
}

json profile_summary(const AngleProfile& p, double margin) {
  return {{"sup", p.sup},
          {"tail_start", p.tail_start},
          {"tail_sup", p.tail_sup},
          {"trend", std::string(to_string(p.trend))},
          {"window", p.window},
          {"extrapolated_limit", p.extrapolated_limit},
          {"verdict", std::string(to_string(closedness_verdict(p, margin)))}};
}

std::string verdict_note(int max_degree) {
  return "finite-degree extrapolation from degrees 1.." + std::to_string(max_degree) + "; not a proof";
}

Report run_angle(const Options& o) {
  if (o.inputs.size() != 2) throw InputError("angle: expected exactly 2 subspace files");
  const auto v = load_subspaces(o);
  const Tolerances tol = o.tolerances();
  const AngleResult a = friedrichs_cos(v[0], v[1], tol);
  const AngleResult oracle = friedrichs_cos_projection(v[0], v[1], tol);
  if (std::abs(a.cosine - oracle.cosine) > 1e-10) {
    std::ostringstream os;
    os << "angle: principal-angle cosine " << a.cosine << " differs from ||P_M P_N - P_meet|| = " << oracle.cosine;
    throw ContractViolation(os.str());
  }
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_dims"] = input_dims(v);
  r.results = {{"cosine", a.cosine},
               {"angle_radians", std::acos(std::clamp(a.cosine, 0.0, 1.0))},
               {"dim_left", a.dim_left},
               {"dim_right", a.dim_right},
               {"dim_intersection", a.dim_intersection},
               {"method", std::string(to_string(a.method))},
               {"projection_norm_cosine", oracle.cosine}};
  return r;
}

Report run_fock_angle(const Options& o) {
  if (o.inputs.size() != 2) throw InputError("fock-angle: expected exactly 2 subspace files");
  const auto v = load_subspaces(o);
  const FockOptions fo = o.fock();
  const AngleResult base = friedrichs_cos(v[0], v[1], fo.tol);
  const bool trivial = intersect(v[0], v[1], fo.tol).is_zero();
  const std::size_t left[] = {0};
  std::vector<ProfileEntry> entries;
  std::vector<std::string> paths;
  for (int n = 1; n <= o.degree(); ++n) {
    const double checked = tensor_power_angle(v[0], v[1], n, fo);
    const TensorAngle t = tensor_sum_angle(v, left, 1, n, fo);
    entries.push_back({n, checked, t.angle.dim_left, t.angle.dim_right, t.angle.dim_intersection});
    paths.emplace_back(to_string(t.path));
  }
  const int tail = o.tail_start.value_or(default_tail_start(o.degree()));
  const AngleProfile p = make_profile(std::move(entries), tail);
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_dims"] = input_dims(v);
  r.results = {{"base_cosine", base.cosine},
               {"base_dim_intersection", base.dim_intersection},
               {"law", trivial ? "c^n" : "c"},
               {"profile", profile_summary(p, o.margin)},
               {"paths", paths},
               {"verdict", std::string(to_string(closedness_verdict(p, o.margin)))},
               {"verdict_note", verdict_note(o.degree())}};
  r.tables["profile"] = profile_table(p);
  return r;
}

DossierOptions dossier_options(const Options& o) {
  DossierOptions d;
  d.max_degree = o.degree();
  d.margin = o.margin;
  d.tail_start = o.tail_start;
  d.fock = o.fock();
  d.seed = o.seed;
  d.budget = o.budget;
  return d;
}

void add_dossier(Report& r, const ClosednessDossier& d) {
  json profiles = json::object();
  for (const auto& [key, p] : d.profiles) {
    json s = profile_summary(p, d.margin);
    s["path"] = d.paths.at(key);
    profiles[key] = s;
    r.tables["profile " + key] = profile_table(p);
  }
  json reduced = json::object();
  for (const auto& [key, p] : d.reduced_profiles) {
    reduced[key] = profile_summary(p, d.margin);
    r.tables["reduced_profile " + key] = profile_table(p);
  }

  json res = json::object();
  res["kind"] = d.kind;
  res["r"] = d.r;
  res["ambient_d"] = d.ambient_d;
  res["joint_intersection_dim"] = d.joint_intersection_dim ? json(*d.joint_intersection_dim) : json(nullptr);
  res["reduced"] = d.reduced;
  res["reduction_statement"] = d.reduction_statement;
  res["profiles"] = profiles;
  res["reduced_profiles"] = reduced;
  res["rho"] = d.rho ? json(*d.rho) : json(nullptr);
  res["compactness_decay"] = d.compactness_decay;
  res["omitted_split_tail_holds"] = d.omitted_split_tail_holds ? json(*d.omitted_split_tail_holds) : json(nullptr);
  res["low_degree_violations"] = d.low_degree_violations;
  res["skipped_full_fock_degrees"] = d.skipped_degrees;
  double worst_check = 0.0;
  for (const auto& c : d.cross_checks) worst_check = std::max(worst_check, std::abs(c.value - c.reference));
  res["cross_checks"] = {{"count", d.cross_checks.size()}, {"max_deviation", worst_check}};
  res["verdict"] = std::string(to_string(d.verdict));
  res["verdict_note"] = verdict_note(d.max_degree);
  res["tail_start"] = d.tail_start;
  res["margin"] = d.margin;
  r.results = res;

  if (!d.reduction_rows.empty()) {
    Table t{{"split", "degree", "unreduced", "reduced_max"}, {}};
    for (const auto& row : d.reduction_rows) t.rows.push_back({row.split, row.degree, row.unreduced, row.reduced_max});
    r.tables["reduction"] = t;
  }
  if (!d.omitted_split_rows.empty()) {
    Table t{{"degree", "full", "max_omitted", "holds", "tail"}, {}};
    for (const auto& row : d.omitted_split_rows) t.rows.push_back({row.degree, row.full, row.max_omitted, row.holds, row.tail});
    r.tables["omitted_splits"] = t;
  }
  if (!d.compactness_decay.empty()) {
    Table t{{"degree", "rho_power"}, {}};
    for (std::size_t n = 0; n < d.compactness_decay.size(); ++n) t.rows.push_back({n, d.compactness_decay[n]});
    r.tables["compactness"] = t;
  }
  if (!d.cross_checks.empty()) {
    Table t{{"check", "degree", "value", "reference", "tolerance"}, {}};
    for (const auto& c : d.cross_checks) t.rows.push_back({c.what, c.degree, c.value, c.reference, c.tolerance});
    r.tables["cross_checks"] = t;
  }
}

Report run_fock_sum(const Options& o) {
  require_inputs(o, 2, "subspace files");
  const auto v = load_subspaces(o);
  const ClosednessDossier d = fock_sum_dossier(v, dossier_options(o));
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_dims"] = input_dims(v);
  add_dossier(r, d);
  return r;
}

Report run_ideal_sum(const Options& o) {
  require_inputs(o, 2, "subspace or ideal files");
  std::vector<bool> is_subspace;
  for (const auto& path : o.inputs) is_subspace.push_back(is_subspace_file(path));
  std::optional<int> vars = o.dim;
  for (std::size_t i = 0; i < o.inputs.size() && !vars; ++i) {
    if (is_subspace[i]) vars = static_cast<int>(read_subspace_file(o.inputs[i], o.rank_tol).ambient_dim());
  }

  std::vector<IdealInput> ideals;
  json described = json::array();
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    if (is_subspace[i]) {
      Subspace s = read_subspace_file(o.inputs[i], o.rank_tol);
      described.push_back({{"kind", "subspace"}, {"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}});
      ideals.emplace_back(std::move(s));
    } else {
      HomogeneousIdeal ideal = read_ideal_file(o.inputs[i], vars.value_or(3));
      json gens = json::array();
      for (const auto& g : ideal.generators()) gens.push_back(g.to_string());
      described.push_back({{"kind", "ideal"}, {"variables", ideal.variables()}, {"generators", gens}});
      ideals.emplace_back(std::move(ideal));
    }
  }
  const ClosednessDossier dossier = ideal_sum_dossier(ideals, dossier_options(o));
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_descriptions"] = described;
  add_dossier(r, dossier);
  return r;
}

Report run_paper_example(const Options& o) {
  if (!o.inputs.empty()) throw InputError("paper-example: takes no input files");
  if (o.degree() < 2) throw InputError("paper-example: --max-degree must be at least 2");
  const ExampleReport e = nonclosed_example(o.degree(), o.margin, o.tolerances(), o.tail_start);
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.results = {{"ideal_left", "<y^2 + x*z>"},
               {"ideal_right", "<x>"},
               {"intersection_generator", "x^2*z + x*y^2"},
               {"profile", profile_summary(e.profile, o.margin)},
               {"verdict", std::string(to_string(e.verdict))},
               {"verdict_note", verdict_note(o.degree())}};
  Table t{{"degree", "f_norm_sq", "f_norm_sq_closed_form", "inner_fg", "g_norm_sq", "normalized_inner",
           "closed_form", "cosine", "dim_left", "dim_right", "dim_intersection", "overlap_with_intersection",
           "intersection_distance"},
          {}};
  for (const auto& row : e.rows) {
    t.rows.push_back({row.degree, row.f_norm_sq, row.f_norm_sq_closed, row.inner, row.g_norm_sq, row.normalized,
                      row.normalized_closed, row.cosine, row.dim_left, row.dim_right, row.dim_intersection,
                      row.overlap_with_intersection, row.intersection_distance});
  }
  r.tables["example"] = t;
  r.tables["profile"] = profile_table(e.profile);
  return r;
}

Report run_reduction_check(const Options& o) {
  require_inputs(o, 2, "subspace files");
  if (o.extension.empty()) throw InputError("reduction-check: --extension FILE is required");
  const auto w = load_subspaces(o);
  const Subspace e = read_subspace_file(o.extension, o.rank_tol);
  const FockOptions fo = o.fock();
  Table t{{"degree", "lhs", "rhs"}, {}};
  double worst = 0.0;
  for (int n = 1; n <= o.degree(); ++n) {
    const ReductionCheck c = reduction_formula_check(w, e, n, fo);
    t.rows.push_back({n, c.lhs, c.rhs});
    worst = std::max(worst, std::abs(c.lhs - c.rhs));
  }
  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_dims"] = input_dims(w);
  r.config["extension_dim"] = e.dim();
  r.results = {{"max_abs_difference", worst}, {"tolerance", 1e-7}, {"holds", worst <= 1e-7}};
  r.tables["reduction"] = t;
  return r;
}

Report run_composition_check(const Options& o) {
  require_inputs(o, 1, "subspace files");
  if (o.map.empty()) throw InputError("composition-check: --map FILE is required");
  const auto v = load_subspaces(o);
  LinearMapSpec spec{read_matrix_file(o.map), std::nullopt};
  const Tolerances tol = o.tolerances();
  const auto rows = composition_norm_profile(spec, v, o.degree(), tol);

  Table iso{{"subspace", "degree", "domain_dim", "isometry_defect"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const HomogeneousIdeal ideal = vanishing_ideal(v[i]);
    for (int n = 1; n <= o.degree(); ++n) {
      const Subspace domain = coinvariant_component(ideal, n, tol.rank);
      const Matrix c = composition_matrix(spec, n, domain);
      const Matrix defect = c.adjoint() * c - Matrix::Identity(c.cols(), c.cols());
      const double err = defect.size() ? defect.cwiseAbs().maxCoeff() : 0.0;
      if (err > 1e-9) {
        std::ostringstream os;
        os << "composition-check: composition on the coinvariant component of V" << i + 1 << " at degree " << n
           << " is not isometric (defect " << err << ")";
        throw ContractViolation(os.str());
      }
      worst = std::max(worst, err);
      iso.rows.push_back({"V" + std::to_string(i + 1), n, domain.dim(), err});
    }
  }
  Table norms{{"degree", "norm", "bound", "smallest_positive", "domain_dim"}, {}};
  for (const auto& row : rows) norms.rows.push_back({row.degree, row.norm, row.bound, row.smallest_positive, row.domain_dim});

  Report r;
  r.command = o.command;
  r.config = config_echo(o);
  r.config["input_dims"] = input_dims(v);
  r.config["map_shape"] = {spec.a.rows(), spec.a.cols()};
  r.results = {{"max_isometry_defect", worst}, {"isometry_tolerance", 1e-9}, {"r", v.size()}};
  r.tables["composition"] = norms;
  r.tables["isometry"] = iso;
  return r;
}

void add_common(CLI::App* sub, Options& o, bool takes_inputs) {
  if (takes_inputs) sub->add_option("inputs", o.inputs, "Input files");
  sub->add_option("--max-degree", o.max_degree, "Largest degree computed");
  sub->add_option("--margin", o.margin, "Closedness margin")->capture_default_str();
  sub->add_option("--rank-tol", o.rank_tol, "Relative rank cutoff")->capture_default_str();
  sub->add_option("--intersection-tol", o.intersection_tol, "Cross-singular values within this of 1 count as intersection")
      ->capture_default_str();
  sub->add_option("--seed", o.seed, "Seed for sampled kernel points")->capture_default_str();
  sub->add_option("--budget", o.budget, "Largest materialised ambient dimension")->capture_default_str();
  sub->add_option("--gram-budget", o.gram_budget, "Largest Kronecker Gram dimension")->capture_default_str();
  sub->add_option("--tensor-path", o.tensor_path, "automatic, kronecker or isotypic")
      ->check(CLI::IsMember({"automatic", "kronecker", "isotypic"}))
      ->capture_default_str();
  sub->add_option("--tail-start", o.tail_start, "First degree of the tail (default ceil(max/2))");
  sub->add_option("--dim", o.dim, "Number of polynomial variables for ideal files");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", o.out, "Write the report to this path");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Friedrichs angles between subspaces, Fock spaces and homogeneous ideals", "fockangle"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"angle", "Friedrichs cosine between two subspaces"},
      {"fock-angle", "Per-degree cosines of V1^{⊗n} against V2^{⊗n}"},
      {"fock-sum", "Closedness dossier for F(V1) + ... + F(Vr)"},
      {"ideal-sum", "Closedness dossier for sums of coinvariant spaces of homogeneous ideals"},
      {"paper-example", "The pair <y^2 + xz>, <x> with its closed forms"},
      {"reduction-check", "Reduction identity for W_i plus an orthogonal extension E"},
      {"composition-check", "Composition operators f -> f∘A* on coinvariant spaces"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o, name != "paper-example");
    if (name == "reduction-check") sub->add_option("--extension", o.extension, "Subspace file for E");
    if (name == "composition-check") sub->add_option("--map", o.map, "Matrix file for A");
    sub->callback([&o, name = name] { o.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    validate(o);
    Report report;
    if (o.command == "angle") report = run_angle(o);
    else if (o.command == "fock-angle") report = run_fock_angle(o);
    else if (o.command == "fock-sum") report = run_fock_sum(o);
    else if (o.command == "ideal-sum") report = run_ideal_sum(o);
    else if (o.command == "paper-example") report = run_paper_example(o);
    else if (o.command == "reduction-check") report = run_reduction_check(o);
    else report = run_composition_check(o);

    const std::string text = o.format == "csv" ? report.to_csv() : report.to_json();
    if (o.out.empty()) {
      out << text;
    } else {
      write_atomically(o.out, text);
    }
    return ok;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return budget_error;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return contract_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace fockangle::cli
