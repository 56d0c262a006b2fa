// Batch front end: one command per invocation, JSON report out.
//
//   bergman_cli <command> <input.json> [options]
//
// Exit status: 0 success, 2 parse error, 3 precondition violation,
// 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bergman/dbar.hpp"
#include "bergman/density.hpp"
#include "bergman/interpolation.hpp"
#include "bergman/io.hpp"
#include "bergman/scheme.hpp"
#include "bergman/sequence_norms.hpp"

namespace {

using namespace bergman;
using io::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string command;
  std::string input;
  std::string out;
  std::string table;
  double p = 2.0;
  double alpha = 0.0;
  double beta = 0.5;
  std::optional<double> epsilon;
  std::optional<double> auto_epsilon;
  bool maximal = false;
  std::vector<double> radii;
  std::string grid;
  std::uint64_t seed = 1;
  int trials = 64;
  double tol = 1e-9;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError(ErrorKind::InvalidArgument, "cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PolarGrid parse_grid(const std::string& spec) {
  PolarGrid g;
  if (spec.empty()) return g;
  const auto x = spec.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--grid expects RxT, e.g. 200x200");
  try {
    g.radial = std::stoi(spec.substr(0, x));
    g.angular = std::stoi(spec.substr(x + 1));
  } catch (const std::exception&) {
    throw UsageError("--grid expects RxT, e.g. 200x200");
  }
  g.validate();
  return g;
}

void require_solver_p(const Options& o) {
  if (!(o.p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "solver commands need p >= 1");
}

InterpolationScheme resolve_scheme(const io::InputDocument& doc, const Options& o, double& epsilon_used) {
  if (doc.scheme) {
    epsilon_used = doc.scheme->inner_radius;
    return *doc.scheme;
  }
  epsilon_used = o.epsilon ? *o.epsilon : auto_epsilon(doc.points, o.auto_epsilon.value_or(0.5));
  return o.maximal ? build_maximal_scheme(doc.points, epsilon_used) : build_minimal_scheme(doc.points, epsilon_used);
}

JetTargets resolve_targets(const io::InputDocument& doc, const InterpolationScheme& s) {
  if (doc.jets) return io::targets_from_jets(s, *doc.jets);
  if (doc.values) return targets_from_values(s, *doc.values);
  throw Error(ErrorKind::MalformedJet, "input needs 'jets' or 'values'");
}

json header(const Options& o) {
  json h = {{"tool", "bergman_cli"},
            {"version", kVersion},
            {"command", o.command},
            {"modules",
             {{"geometry", kVersion},
              {"scheme", kVersion},
              {"density", kVersion},
              {"interpolation", kVersion},
              {"dbar", kVersion}}},
            {"tolerances",
             {{"tol", o.tol},
              {"boundary_guard", kBoundaryGuard},
              {"gram_condition_limit", kGramConditionLimit},
              {"constant_tolerance", kConstantTolerance}}},
            {"parameters", {{"p", o.p}, {"alpha", o.alpha}, {"seed", o.seed}}}};
  return h;
}

json run_scheme(const io::InputDocument& doc, const Options& o) {
  double eps = 0.0;
  const InterpolationScheme s = resolve_scheme(doc, o, eps);
  json r;
  r["epsilon"] = eps;
  r["variant"] = doc.scheme ? "input" : (o.maximal ? "maximal" : "minimal");
  r["scheme"] = io::scheme_to_json(s);
  r["cluster_count"] = s.clusters.size();
  r["admissibility"] = io::to_json(check_admissibility(s));
  r["overlap_bound"] = overlap_bound(s);
  return r;
}

json run_density(const io::InputDocument& doc, const Options& o) {
  const std::vector<double> radii = o.radii.empty() ? default_density_radii() : o.radii;
  const DensityReport rep = estimate_upper_densities(doc.points, radii, default_density_centers(doc.points));
  if (!o.table.empty()) {
    std::ofstream t(o.table);
    io::write_density_table(t, rep);
  }
  json r;
  r["density"] = io::to_json(rep);
  json kh = json::array();
  for (const double rad : radii) kh.push_back({{"radius", rad}, {"k_hat", k_hat(doc.points, rad)}});
  r["k_hat"] = kh;
  return r;
}

json run_interpolate(const io::InputDocument& doc, const Options& o) {
  require_solver_p(o);
  double eps = 0.0;
  const InterpolationScheme s = resolve_scheme(doc, o, eps);
  const JetTargets t = resolve_targets(doc, s);
  const SolveReport rep = solve_p2(s, t);
  json r;
  r["epsilon"] = eps;
  r["scheme"] = io::scheme_to_json(s);
  r["solve"] = io::to_json(rep);
  if (o.p != 2.0) r["target_norm_p"] = target_norm(s, t, o.p);
  return r;
}

json run_quotient(const io::InputDocument& doc, const Options& o) {
  require_solver_p(o);
  double eps = 0.0;
  const InterpolationScheme s = resolve_scheme(doc, o, eps);
  const JetTargets t = resolve_targets(doc, s);
  json per = json::array();
  double acc = 0.0;
  for (std::size_t k = 0; k < s.clusters.size(); ++k) {
    const double v = cluster_quotient_norm(s.domains[k], t.clusters[k], o.p);
    acc += std::pow(v, o.p);
    per.push_back({{"cluster", k}, {"constraints", t.clusters[k].size()}, {"quotient_norm", v}});
  }
  json r;
  r["epsilon"] = eps;
  r["scheme"] = io::scheme_to_json(s);
  r["clusters"] = per;
  r["target_norm"] = std::pow(acc, 1.0 / o.p);
  return r;
}

json run_dbar_check(const io::InputDocument& doc, const Options& o, const PolarGrid& grid) {
  json r;
  r["grid"] = {{"radial", grid.radial}, {"angular", grid.angular}, {"max_radius", grid.max_radius}};

  const GridFunction one = GridFunction::sample(grid, [](cplx) { return cplx(1.0); });
  const GridFunction u = cauchy_transform(one);
  double cauchy_err = 0.0;
  for (int i = 0; i < grid.radial; ++i) {
    for (int j = 0; j < grid.angular; ++j) {
      cauchy_err = std::max(cauchy_err, std::abs(u.at(i, j) - std::conj(grid.node(i, j))));
    }
  }
  r["cauchy_unit_density_max_error"] = cauchy_err;
  r["dbar_residual"] = dbar_residual(u, one);
  if (!o.table.empty()) {
    std::ofstream t(o.table);
    io::write_grid_function(t, u);
  }

  const RealField logw = [](cplx z) { return -std::log1p(-std::norm(z)); };
  double lap_err = 0.0;
  for (int i = 0; i < grid.radial && grid.r(i) <= 0.9; i += 4) {
    for (int j = 0; j < grid.angular; j += 8) {
      lap_err = std::max(lap_err, std::abs(invariant_laplacian(logw, grid.node(i, j), 1e-3) - 1.0));
    }
  }
  r["log_weight_laplacian_max_error"] = lap_err;

  if (!doc.points.empty()) {
    const TauSpec spec{doc.points, o.p, o.beta};
    json taus = json::array();
    for (const auto& z : doc.points) {
      taus.push_back({{"point", io::to_json(z.value())},
                      {"tau", tau_eval(spec, z.value())},
                      {"tau_smooth", tau_smooth(spec, z.value())}});
    }
    r["tau"] = {{"beta", o.beta}, {"samples", taus}};
  }
  return r;
}

json run_o_weight(const io::InputDocument& doc, const Options& o) {
  if (!doc.coefficients) throw Error(ErrorKind::InvalidArgument, "o-weight needs 'coefficients'");
  const double w = o_interp_weight(doc.points, *doc.coefficients, o.p, o.alpha);
  json per = json::array();
  for (std::size_t g = 0; g < doc.points.size(); ++g) {
    const Crowding c = crowding(doc.points, g);
    per.push_back({{"index", g}, {"n_exclusive", c.n_exclusive}, {"n_inclusive", c.n_inclusive}, {"delta", c.delta}});
  }
  return {{"weight", w}, {"crowding", per}};
}

json run_probe(const io::InputDocument& doc, const Options& o) {
  double eps = 0.0;
  const InterpolationScheme s = resolve_scheme(doc, o, eps);
  return {{"epsilon", eps},
          {"trials", o.trials},
          {"scheme", io::scheme_to_json(s)},
          {"constant", interpolation_constant_probe(s, o.trials, o.seed)}};
}

int dispatch(const Options& o) {
  const PolarGrid grid = parse_grid(o.grid);
  const io::InputDocument doc = io::parse_sequence(read_file(o.input));
  json report = header(o);
  report["input"] = io::document_to_json(doc);
  if (o.command == "scheme") {
    report["result"] = run_scheme(doc, o);
  } else if (o.command == "density") {
    report["result"] = run_density(doc, o);
  } else if (o.command == "interpolate") {
    report["result"] = run_interpolate(doc, o);
  } else if (o.command == "quotient") {
    report["result"] = run_quotient(doc, o);
  } else if (o.command == "dbar-check") {
    report["result"] = run_dbar_check(doc, o, grid);
  } else if (o.command == "o-weight") {
    report["result"] = run_o_weight(doc, o);
  } else if (o.command == "probe") {
    report["result"] = run_probe(doc, o);
  }
  const std::string text = report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster interpolation in Bergman spaces"};
  Options o;
  app.add_option("command", o.command, "scheme | density | interpolate | quotient | dbar-check | o-weight | probe")
      ->required()
      ->check(CLI::IsMember({"scheme", "density", "interpolate", "quotient", "dbar-check", "o-weight", "probe"}));
  app.add_option("input", o.input, "input JSON document")->required();
  app.add_option("--out", o.out, "report path (default stdout)");
  app.add_option("--table", o.table, "tabular dump path (density, dbar-check)");
  app.add_option("--p", o.p, "exponent p");
  app.add_option("--alpha", o.alpha, "weight exponent alpha");
  app.add_option("--beta", o.beta, "tau parameter beta in (0,1)");
  auto* eps = app.add_option("--epsilon", o.epsilon, "scheme inner radius");
  app.add_option("--auto-epsilon", o.auto_epsilon, "choose epsilon so the diameter stays below r0")
      ->excludes(eps)
      ->expected(0, 1)
      ->default_str("0.5");
  app.add_flag("--maximal", o.maximal, "build the maximal scheme");
  app.add_option("--radii", o.radii, "density radii")->delimiter(',');
  app.add_option("--grid", o.grid, "polar grid RxT for dbar-check");
  app.add_option("--seed", o.seed, "probe seed");
  app.add_option("--trials", o.trials, "probe trials");
  app.add_option("--tol", o.tol, "reported tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return dispatch(o);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << (is_numerical(e.kind()) ? "numerical failure: " : "precondition violation: ") << e.what() << '\n';
    return is_numerical(e.kind()) ? 4 : 3;
  }
}
