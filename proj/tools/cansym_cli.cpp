// Command-line front end for the cansym library.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cansym/catalog.hpp"
#include "cansym/determining.hpp"
#include "cansym/geodesics.hpp"
#include "cansym/json_io.hpp"
#include "cansym/numeric_residual.hpp"
#include "cansym/solver.hpp"
#include "cansym/sweep.hpp"

using namespace cansym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSingular = 2;
constexpr int kExitMismatch = 3;

struct RunConfig {
  std::string matrix_path;
  std::string family;
  std::string params;
  std::string grid_path;
  std::string fields_path;
  std::string init_path;
  double tol = kDefaultTolerance;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  int free_particle = 0;
  double t_end = 2.0;
  std::size_t steps = 10000;
  std::string method = "rk4";
  bool structure = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

/// The matrix from --matrix or from --family/--params.
RatMatrix input_matrix(const RunConfig& cfg) {
  if (!cfg.matrix_path.empty() && !cfg.family.empty())
    throw InputError("give either --matrix or --family, not both");
  if (!cfg.matrix_path.empty()) {
    const RatMatrix a = matrix_from_json(read_json_file(cfg.matrix_path));
    if (a.rows() != a.cols() || a.rows() == 0) throw InputError("matrix must be square and nonempty");
    return a;
  }
  if (!cfg.family.empty()) return family_spec(cfg.family).build(parse_params(cfg.params));
  throw InputError("no system given: use --matrix FILE or --family NAME [--params ...]");
}

int cmd_analyze(const RunConfig& cfg) {
  const RatMatrix a = input_matrix(cfg);
  SymmetrySolution sol;
  try {
    sol = solve(a);
  } catch (const SingularMatrixError& e) {
    std::cerr << "refused: " << e.what() << '\n'
              << "hint: candidate fields can still be checked with 'cansym verify'\n";
    if (cfg.format == "json")
      emit(Json{{"refused", true}, {"reason", e.what()}, {"classification", to_json(classify_matrix(a))}});
    return kExitSingular;
  }
  const AlgebraAnalysis analysis = analyze_symmetry_algebra(structure_constants_of(sol));
  if (cfg.format == "json") {
    emit(to_json(sol, analysis));
    return kExitOk;
  }
  const auto [lo, hi] = dimension_bounds(sol.n);
  const auto& m = sol.classification;
  std::cout << "n = " << sol.n << "\n"
            << "trace = " << to_string(m.trace) << ", det = " << to_string(m.determinant)
            << ", derogatory = " << yes_no(m.derogatory)
            << ", minimal polynomial degree = " << m.minimal_polynomial_degree << "\n"
            << "symmetry dimension = " << sol.dimension << " (commutant " << sol.commutant.dimension
            << ", anticommutant " << sol.anticommutant.dimension << ")\n"
            << "bounds [" << lo << ", " << hi << "]"
            << (sol.within_bound_hypotheses ? "" : " (not asserted: trace A = 0)") << "\n"
            << "algebra: solvable = " << yes_no(analysis.solvable) << ", radical " << analysis.radical_dim
            << ", Levi " << analysis.levi_dim << "\n"
            << "generators:\n";
  for (std::size_t i = 0; i < sol.generators.size(); ++i) {
    const auto& g = sol.generators[i];
    std::cout << "  X" << i + 1 << " [" << to_string(g.cls) << "] "
              << (g.field ? to_string(*g.field) : std::string("(structured; e^{wA} not closed form)")) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.family.empty()) throw InputError("sweep needs --family");
  if (cfg.grid_path.empty()) throw InputError("sweep needs --grid FILE");
  const FamilySpec& spec = family_spec(cfg.family);
  const ParamMap fixed = parse_params(cfg.params);
  std::vector<ParamMap> grid = grid_from_json(read_json_file(cfg.grid_path));
  for (auto& g : grid)
    for (const auto& [k, v] : fixed) g.emplace(k, v);
  const SpecialValueReport r = sweep([&spec](const ParamMap& p) { return spec.build(p); }, grid);
  if (cfg.format == "json") {
    emit(to_json(r));
    return kExitOk;
  }
  for (const auto& p : r.points) {
    std::cout << cfg.family << " (" << to_string(p.params) << "): ";
    if (p.singular)
      std::cout << "singular, skipped\n";
    else
      std::cout << *p.dimension << "\n";
  }
  if (r.generic_dimension) std::cout << "generic dimension " << *r.generic_dimension << "\n";
  for (const auto i : r.jumps)
    std::cout << "jump at " << to_string(r.points[i].params) << ": " << *r.points[i].dimension << "\n";
  return kExitOk;
}

struct FieldsInput {
  std::vector<std::string> texts;
  ParamMap params;
};

FieldsInput read_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string body = ss.str();
  FieldsInput f;
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (body[first] == '[' || body[first] == '{')) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
      const auto& list = j.is_object() ? j.at("fields") : j;
      f.texts = list.get<std::vector<std::string>>();
      if (j.is_object() && j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) f.params[k] = parse_rational(v.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ": " + e.what());
    }
    return f;
  }
  // Plain text: one field per line, '#' starts a comment.
  std::istringstream lines(body);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") != std::string::npos) f.texts.push_back(line);
  }
  return f;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.fields_path.empty()) throw InputError("verify needs --fields FILE");
  const GeodesicSystem sys = cfg.free_particle > 0 ? GeodesicSystem::free_particle(cfg.free_particle)
                                                   : GeodesicSystem::codim_one(input_matrix(cfg));
  FieldsInput in = read_fields(cfg.fields_path);
  for (const auto& [k, v] : parse_params(cfg.params)) in.params.emplace(k, v);
  const auto vnames = velocity_names(sys);
  Json out = Json::array();
  for (const auto& text : in.texts) {
    const VectorField x = parse_field(text, sys.n(), sys.has_w(), in.params);
    const SymmetryVerdict v = is_symmetry(x, sys);
    const double res = numeric_residual(x, sys, cfg.samples, cfg.seed);
    const bool numeric_ok = res < cfg.tol;
    const std::string lambda = v.lambda.to_string(sys.n(), vnames);
    if (cfg.format == "json") {
      out.push_back(Json{{"field", text},
                         {"canonical", to_string(x)},
                         {"symmetry", v.is_symmetry},
                         {"exact", v.is_symmetry},
                         {"numeric_residual", res},
                         {"numeric_ok", numeric_ok},
                         {"lambda", lambda},
                         {"failing", v.failing}});
    } else {
      std::cout << (v.is_symmetry ? "accept" : "reject") << "  " << text << "  (numeric residual " << res
                << ", lambda = " << lambda << ")\n";
      for (const auto& f : v.failing) std::cout << "    nonzero: " << f << "\n";
    }
  }
  if (cfg.format == "json") emit(out);
  return kExitOk;
}

int cmd_geodesic(const RunConfig& cfg) {
  if (cfg.init_path.empty()) throw InputError("geodesic needs --init FILE");
  if (cfg.steps == 0) throw InputError("--steps must be positive");
  const RatMatrix a = input_matrix(cfg);
  const GeodesicState init = state_from_json(read_json_file(cfg.init_path));
  if (static_cast<std::size_t>(init.x.size()) != a.rows())
    throw InputError("initial state dimension does not match the matrix");
  Trajectory traj;
  if (cfg.method == "rk4") {
    traj = rk4_geodesic(a, init, cfg.t_end, cfg.steps);
  } else {
    for (std::size_t k = 0; k <= cfg.steps; ++k)
      traj.samples.push_back(closed_form_geodesic(a, init, cfg.t_end * static_cast<double>(k) /
                                                               static_cast<double>(cfg.steps)));
  }
  const double drift = first_integral_drift(a, traj);
  const GeodesicState exact_end = closed_form_geodesic(a, init, cfg.t_end);
  const GeodesicState& end = traj.samples.back();
  const double end_error = std::max((end.x - exact_end.x).cwiseAbs().maxCoeff(),
                                    (end.u - exact_end.u).cwiseAbs().maxCoeff());
  if (cfg.format == "json") {
    emit(Json{{"method", cfg.method},
              {"steps", cfg.steps},
              {"final", to_json(end)},
              {"first_integral_drift", drift},
              {"endpoint_error_vs_closed_form", end_error},
              {"csv", traj.to_csv()}});
  } else {
    std::cout << traj.to_csv();
    std::cerr << "# first-integral drift " << drift << ", endpoint error vs closed form " << end_error << "\n";
  }
  return kExitOk;
}

int cmd_catalog(const RunConfig& cfg) {
  const VerifyOptions opts{cfg.tol, cfg.samples, cfg.seed};
  std::vector<FamilyReport> reports;
  std::vector<StructureReport> structures;
  if (!cfg.family.empty()) {
    reports.push_back(verify_family(cfg.family, parse_params(cfg.params), opts));
    if (cfg.structure) structures.push_back(structure_report(cfg.family, parse_params(cfg.params)));
  } else {
    reports = verify_catalog(opts);
    if (cfg.structure)
      for (const auto& r : reports) structures.push_back(structure_report(r.family, r.params));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok;
  for (const auto& s : structures) ok = ok && s.ok;
  if (cfg.format == "json") {
    Json j{{"reports", Json::array()}};
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    if (cfg.structure) {
      j["structure"] = Json::array();
      for (const auto& s : structures) j["structure"].push_back(to_json(s));
    }
    j["ok"] = ok;
    emit(j);
  } else {
    for (const auto& r : reports) {
      std::cout << (r.ok ? "ok      " : "MISMATCH") << "  " << r.family << " [" << r.case_label << "] ("
                << to_string(r.params) << ")";
      if (r.solver_refused)
        std::cout << "  singular: solver refused";
      else if (r.solver_dimension)
        std::cout << "  dimension " << *r.solver_dimension;
      if (r.expected_dimension) std::cout << " / expected " << *r.expected_dimension;
      std::size_t passed = 0;
      for (const auto& g : r.generators) passed += g.exact && g.numeric_ok;
      std::cout << "  listed " << passed << "/" << r.generators.size() << " verified";
      if (r.spans_equal) std::cout << ", spans " << (*r.spans_equal ? "equal" : "DIFFER");
      std::cout << "\n";
      for (const auto& c : r.corrections)
        std::cout << "          corrected " << c.label << ": '" << c.original << "' -> '" << c.corrected << "'\n";
    }
    for (const auto& s : structures)
      std::cout << (s.ok ? "ok      " : "MISMATCH") << "  structure " << s.family << " (" << to_string(s.params)
                << "): solvable " << yes_no(s.analysis.solvable) << ", radical " << s.analysis.radical_dim
                << ", Levi " << s.analysis.levi_dim << "\n";
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cansym: Lie point symmetries of canonical-connection geodesics"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "numeric residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "numeric sample count")->check(CLI::Range(1, 1000000));
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_system = [&cfg](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix_path, "JSON file with the rational matrix A");
    sub->add_option("--family", cfg.family, "catalog family (A4.2 ... A4.6)");
    sub->add_option("--params", cfg.params, "family parameters, e.g. a=1,b=-1/2");
  };

  auto* analyze = app.add_subcommand("analyze", "solve the symmetry problem for a matrix");
  add_system(analyze);
  add_common(analyze);

  auto* sweep_cmd = app.add_subcommand("sweep", "symmetry dimension over a parameter grid");
  sweep_cmd->add_option("--family", cfg.family, "catalog family")->required();
  sweep_cmd->add_option("--grid", cfg.grid_path, "JSON grid file")->required();
  sweep_cmd->add_option("--params", cfg.params, "parameters held fixed across the grid");
  add_common(sweep_cmd);

  auto* verify = app.add_subcommand("verify", "check candidate symmetry fields");
  add_system(verify);
  verify->add_option("--fields", cfg.fields_path, "fields file (JSON list or one per line)")->required();
  verify->add_option("--free-particle", cfg.free_particle, "use x''=0 in this many dimensions");
  add_common(verify);

  auto* geodesic = app.add_subcommand("geodesic", "integrate a geodesic");
  add_system(geodesic);
  geodesic->add_option("--init", cfg.init_path, "JSON initial state {t,x,w,u,q}")->required();
  geodesic->add_option("--t-end", cfg.t_end, "integration time span");
  geodesic->add_option("--steps", cfg.steps, "number of steps / samples");
  geodesic->add_option("--method", cfg.method, "rk4 or closed")->check(CLI::IsMember({"rk4", "closed"}));
  add_common(geodesic);

  auto* cat = app.add_subcommand("catalog", "verify the four-dimensional catalog");
  cat->add_option("--family", cfg.family, "restrict to one family");
  cat->add_option("--params", cfg.params, "parameters for --family");
  cat->add_flag("--structure", cfg.structure, "also check the structure claims");
  add_common(cat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*sweep_cmd) return cmd_sweep(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*geodesic) return cmd_geodesic(cfg);
    if (*cat) return cmd_catalog(cfg);
  } catch (const SingularMatrixError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitSingular;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
