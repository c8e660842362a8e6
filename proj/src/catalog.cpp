#include "cansym/catalog.hpp"

#include <exception>
#include <regex>

#include <json.hpp>

#include "cansym/determining.hpp"
#include "cansym/field_span.hpp"

namespace cansym {

namespace detail {
extern const char* const kCatalogJson;
}

namespace {

using nlohmann::json;

ParamMap read_params(const json& j) {
  ParamMap m;
  for (const auto& [k, v] : j.items()) m[k] = parse_rational(v.get<std::string>());
  return m;
}

FamilySpec read_family(const json& j) {
  FamilySpec f;
  f.name = j.at("name");
  f.parameters = j.at("parameters").get<std::vector<std::string>>();
  f.domain = j.value("domain", "");
  f.matrix = j.at("matrix").get<std::vector<std::vector<std::string>>>();
  for (const auto& b : j.at("brackets")) {
    BracketEntry e;
    e.i = b.at("pair").at(0);
    e.j = b.at("pair").at(1);
    e.coeffs = b.at("coeffs").get<std::vector<std::string>>();
    f.brackets.push_back(std::move(e));
  }
  f.coordinate_basis = j.at("coordinate_basis").get<std::vector<std::size_t>>();
  f.bracket_orientation = j.at("bracket_orientation");
  f.orientation_note = j.value("orientation_note", "");
  for (const auto& c : j.at("cases")) {
    CaseSpec cs;
    cs.label = c.at("label");
    cs.condition = c.value("condition", "");
    for (const auto& s : c.at("samples")) cs.samples.push_back(read_params(s));
    cs.expected_dimension = c.at("expected_dimension");
    for (const auto& g : c.at("generators")) cs.generators.push_back({g.at("label"), g.at("field")});
    if (c.contains("corrections"))
      for (const auto& k : c.at("corrections"))
        cs.corrections.push_back({k.at("label"), k.at("original"), k.at("corrected"), k.at("reason")});
    if (c.contains("structure")) {
      const auto& s = c.at("structure");
      if (s.contains("solvable")) cs.structure.solvable = s.at("solvable").get<bool>();
      if (s.contains("levi_dim")) cs.structure.levi_dim = s.at("levi_dim").get<std::size_t>();
      if (s.contains("radical_dim")) cs.structure.radical_dim = s.at("radical_dim").get<std::size_t>();
      if (s.contains("nilpotent_ideal"))
        cs.structure.nilpotent_ideal = s.at("nilpotent_ideal").get<std::vector<std::string>>();
    }
    f.cases.push_back(std::move(cs));
  }
  return f;
}

Rational constant_entry(const std::string& text, const ParamMap& params) {
  const ScalarExpr e = parse_scalar(text, 0, false, params);
  if (!e.is_constant()) throw InputError("fixture entry '" + text + "' is not constant");
  return e.constant_value();
}

const CaseSpec* case_by_label(const FamilySpec& f, const std::string& label) {
  for (const auto& c : f.cases)
    if (c.label == label) return &c;
  return nullptr;
}

}  // namespace

const std::vector<FamilySpec>& catalog() {
  static const std::vector<FamilySpec> families = [] {
    std::vector<FamilySpec> out;
    const json j = json::parse(detail::kCatalogJson);
    for (const auto& f : j.at("families")) out.push_back(read_family(f));
    return out;
  }();
  return families;
}

const FamilySpec& family_spec(const std::string& name) {
  for (const auto& f : catalog())
    if (f.name == name) return f;
  throw InputError("unknown family '" + name + "' (known: A4.2, A4.3, A4.4, A4.5, A4.6)");
}

void FamilySpec::validate(const ParamMap& params) const {
  for (const auto& p : parameters)
    if (!params.count(p)) throw InputError(name + ": missing parameter '" + p + "'");
  for (const auto& [k, v] : params)
    if (std::find(parameters.begin(), parameters.end(), k) == parameters.end())
      throw InputError(name + ": unknown parameter '" + k + "'");
  auto fail = [&] { throw InputError(name + ": parameters " + to_string(params) + " outside " + domain); };
  if (name == "A4.2" && is_zero(params.at("a"))) fail();
  if (name == "A4.5") {
    // Both orderings of a, b are accepted: the listed cases include (1, -1).
    const Rational& a = params.at("a");
    const Rational& b = params.at("b");
    if (is_zero(a) || is_zero(b) || abs(a) > 1 || abs(b) > 1) fail();
  }
  if (name == "A4.6" && (is_zero(params.at("a")) || sgn(params.at("b")) < 0)) fail();
}

RatMatrix FamilySpec::build(const ParamMap& params) const {
  validate(params);
  const std::size_t n = matrix.size();
  RatMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw InputError(name + ": fixture matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = constant_entry(matrix[i][j], params);
  }
  return a;
}

LieAlgebra FamilySpec::bracket_table(const ParamMap& params) const {
  const std::size_t n = coordinate_basis.size();
  std::vector<std::size_t> position(n + 2, 0);  // basis index -> slot
  for (std::size_t c = 0; c < n; ++c) position.at(coordinate_basis[c]) = c;
  position.at(n + 1) = n;
  LieAlgebra l(n + 1);
  for (const auto& e : brackets) {
    RatVector coeffs(n + 1);
    for (std::size_t k = 0; k < e.coeffs.size(); ++k)
      coeffs.at(position.at(k + 1)) = constant_entry(e.coeffs[k], params);
    l.set_bracket(position.at(e.i), position.at(e.j), coeffs);
  }
  return l;
}

const CaseSpec* FamilySpec::match_case(const ParamMap& params) const {
  auto is = [](const Rational& q, long v) { return q == v; };
  if (name == "A4.2") {
    const Rational& a = params.at("a");
    return case_by_label(*this, is(a, 1) ? "a=1" : is(a, -1) ? "a=-1" : "generic");
  }
  if (name == "A4.5") {
    const Rational& a = params.at("a");
    const Rational& b = params.at("b");
    const bool b_unit = is(b, 1) || is(b, -1);
    if (is(a, 1) && is(b, 1)) return case_by_label(*this, "a=1,b=1");
    if (is(a, 1) && is(b, -1)) return case_by_label(*this, "a=1,b=-1");
    if (is(a, 1) && !b_unit) return case_by_label(*this, "a=1");
    if (is(a, -1) && !b_unit) return case_by_label(*this, "a=-1");
    const Rational one(1);
    const bool distinct = a != one && b != one && a != b;
    const bool no_opposites = sgn(one + a) != 0 && sgn(one + b) != 0 && sgn(a + b) != 0;
    return distinct && no_opposites ? case_by_label(*this, "generic") : nullptr;
  }
  if (name == "A4.6") return case_by_label(*this, is_zero(params.at("b")) ? "b=0" : "generic");
  return cases.empty() ? nullptr : &cases.front();
}

FamilyInstance get_family(const std::string& name, const ParamMap& params) {
  FamilyInstance inst;
  inst.spec = &family_spec(name);
  inst.params = params;
  inst.algebra = codim1_algebra(inst.spec->build(params));
  inst.expected = inst.spec->match_case(params);
  return inst;
}

ParamMap parse_params(const std::string& text) {
  ParamMap m;
  static const std::regex item(R"(\s*([A-Za-z_]\w*)\s*=\s*([-+]?[0-9]+(?:/[0-9]+)?)\s*)");
  static const std::regex sep(R"([,;\s]+)");
  std::sregex_token_iterator it(text.begin(), text.end(), sep, -1), end;
  for (; it != end; ++it) {
    const std::string tok = *it;
    if (tok.empty()) continue;
    std::smatch mm;
    if (!std::regex_match(tok, mm, item)) throw InputError("bad parameter assignment '" + tok + "'");
    if (m.count(mm[1])) throw InputError("parameter '" + std::string(mm[1]) + "' given twice");
    m[mm[1]] = parse_rational(std::string(mm[2]));
  }
  return m;
}

namespace {

std::vector<VectorField> listed_fields(const CaseSpec& c, const ParamMap& params, int n) {
  std::vector<VectorField> out;
  for (const auto& g : c.generators) out.push_back(parse_field(g.text, n, true, params));
  return out;
}

bool bracket_table_consistent(const FamilySpec& f, const ParamMap& params, const RatMatrix& a) {
  const RatMatrix oriented = f.bracket_orientation == "transposed" ? a.transpose() : a;
  return f.bracket_table(params) == codim1_algebra(oriented).algebra;
}

}  // namespace

FamilyReport verify_family(const std::string& name, const ParamMap& params, const VerifyOptions& opts) {
  const FamilyInstance inst = get_family(name, params);
  FamilyReport r;
  r.family = name;
  r.params = params;
  r.a = inst.algebra.a;
  r.nonsingular = inst.algebra.nonsingular;
  r.bracket_table_consistent = bracket_table_consistent(*inst.spec, params, r.a);
  const int n = static_cast<int>(r.a.rows());
  const auto sys = GeodesicSystem::codim_one(r.a);

  std::vector<VectorField> listed;
  if (inst.expected) {
    r.case_label = inst.expected->label;
    r.expected_dimension = inst.expected->expected_dimension;
    r.corrections = inst.expected->corrections;
    listed = listed_fields(*inst.expected, params, n);
    for (std::size_t i = 0; i < listed.size(); ++i) {
      GeneratorVerdict v;
      v.label = inst.expected->generators[i].label;
      v.text = inst.expected->generators[i].text;
      for (const auto& c : r.corrections) v.corrected = v.corrected || c.label == v.label;
      v.exact = is_symmetry(listed[i], sys).is_symmetry;
      v.numeric_residual = numeric_residual(listed[i], sys, opts.samples, opts.seed);
      v.numeric_ok = v.numeric_residual < opts.tolerance;
      r.generators.push_back(std::move(v));
    }
    r.listed_rank = field_rank(listed);
  }

  std::vector<VectorField> solver_fields;
  try {
    const SymmetrySolution sol = solve(r.a, {.verify_fields = false});
    r.solver_dimension = sol.dimension;
    if (sol.exact_fields()) solver_fields = sol.fields();
  } catch (const SingularMatrixError& e) {
    r.solver_refused = true;
    r.refusal = e.what();
  }

  if (!solver_fields.empty() && !listed.empty()) {
    const std::size_t solver_rank = field_rank(solver_fields);
    std::vector<VectorField> both = solver_fields;
    both.insert(both.end(), listed.begin(), listed.end());
    const std::size_t joint = field_rank(both);
    r.spans_equal = joint == solver_rank && joint == r.listed_rank;
    for (std::size_t i = 0; i < listed.size(); ++i) {
      std::vector<VectorField> plus = solver_fields;
      plus.push_back(listed[i]);
      r.generators[i].in_solver_span = field_rank(plus) == solver_rank;
    }
  }

  bool ok = r.bracket_table_consistent;
  for (const auto& g : r.generators) ok = ok && g.exact && g.numeric_ok && g.exact == g.numeric_ok;
  if (r.expected_dimension) {
    ok = ok && r.listed_rank == *r.expected_dimension && r.generators.size() == *r.expected_dimension;
    if (r.nonsingular)
      ok = ok && r.solver_dimension == r.expected_dimension && r.spans_equal.value_or(false);
    else
      ok = ok && r.solver_refused;
  }
  r.ok = ok;
  return r;
}

namespace {

std::vector<std::pair<std::string, ParamMap>> catalog_jobs() {
  std::vector<std::pair<std::string, ParamMap>> jobs;
  for (const auto& f : catalog())
    for (const auto& c : f.cases)
      for (const auto& s : c.samples) jobs.emplace_back(f.name, s);
  return jobs;
}

}  // namespace

std::vector<FamilyReport> verify_catalog(const VerifyOptions& opts) {
  const auto jobs = catalog_jobs();
  std::vector<FamilyReport> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = verify_family(jobs[k].first, jobs[k].second, opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<FamilyReport> verify_catalog_serial(const VerifyOptions& opts) {
  std::vector<FamilyReport> out;
  for (const auto& [name, params] : catalog_jobs()) out.push_back(verify_family(name, params, opts));
  return out;
}

StructureReport structure_report(const std::string& name, const ParamMap& params) {
  const FamilyInstance inst = get_family(name, params);
  StructureReport r;
  r.family = name;
  r.params = params;
  const int n = static_cast<int>(inst.algebra.n);
  std::vector<VectorField> listed;
  if (inst.expected) {
    r.case_label = inst.expected->label;
    r.claim = inst.expected->structure;
    listed = listed_fields(*inst.expected, params, n);
  }

  std::optional<LieAlgebra> listed_algebra;
  if (!listed.empty() && field_rank(listed) == listed.size())
    listed_algebra = structure_constants_from_fields(listed);

  if (inst.algebra.nonsingular) {
    const SymmetrySolution sol = solve(inst.algebra.a, {.verify_fields = false});
    r.analysis = analyze_symmetry_algebra(structure_constants_of(sol));
    r.source = "solver";
  } else {
    if (!listed_algebra) throw std::logic_error(name + ": listed fields do not close into an algebra");
    r.analysis = analyze_symmetry_algebra(*listed_algebra);
    r.source = "listed";
  }

  bool ok = true;
  if (r.claim.solvable) ok = ok && (*(r.solvable_matches = r.analysis.solvable == *r.claim.solvable));
  if (r.claim.levi_dim) ok = ok && (*(r.levi_matches = r.analysis.levi_dim == *r.claim.levi_dim));
  if (r.claim.radical_dim)
    ok = ok && (*(r.radical_matches = r.analysis.radical_dim == *r.claim.radical_dim));
  if (!r.claim.nilpotent_ideal.empty()) {
    bool verified = false;
    if (listed_algebra) {
      std::vector<RatVector> candidate;
      for (const auto& label : r.claim.nilpotent_ideal)
        for (std::size_t i = 0; i < inst.expected->generators.size(); ++i)
          if (inst.expected->generators[i].label == label) {
            RatVector v(listed.size());
            v[i] = 1;
            candidate.push_back(std::move(v));
          }
      verified = candidate.size() == r.claim.nilpotent_ideal.size() &&
                 verify_nilpotent_ideal(*listed_algebra, candidate);
    }
    r.nilpotent_ideal_verified = verified;
    ok = ok && verified;
  }
  r.ok = ok;
  return r;
}

}  // namespace cansym
