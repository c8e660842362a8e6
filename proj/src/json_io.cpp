#include "cansym/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cansym {

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>()), 10));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json rational_list(const RatVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace

Json to_json(const RatMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(to_string(m(i, j)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

RatMatrix matrix_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  if (j.is_object()) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
      throw InputError("matrix object needs rows, cols and entries");
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != rows * cols)
      throw InputError("matrix entries must be a flat list of rows*cols values");
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(e[i * cols + c]);
    return m;
  }
  if (j.is_array()) {
    if (j.empty()) throw InputError("empty matrix");
    const std::size_t cols = j.at(0).size();
    RatMatrix m(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_array() || j[i].size() != cols) throw InputError("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(j[i][c]);
    }
    return m;
  }
  throw InputError("cannot read a matrix from " + j.dump());
}

Json to_json(const LieAlgebra& l) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      const RatVector v = l.bracket_basis(i, j);
      bool nonzero = false;
      for (const auto& q : v) nonzero = nonzero || !is_zero(q);
      if (nonzero) brackets.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"coeffs", rational_list(v)}});
    }
  return Json{{"dim", l.dim()}, {"brackets", brackets}};
}

LieAlgebra lie_algebra_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<std::size_t>();
  LieAlgebra l(dim);
  for (const auto& b : j.at("brackets")) {
    const auto i = b.at("i").get<std::size_t>();
    const auto k = b.at("j").get<std::size_t>();
    if (i < 1 || k < 1 || i > dim || k > dim || i == k) throw InputError("bad bracket indices");
    const auto& c = b.at("coeffs");
    if (c.size() != dim) throw InputError("bracket coefficient list has the wrong length");
    RatVector v(dim);
    for (std::size_t m = 0; m < dim; ++m) v[m] = rational_from_json(c[m]);
    l.set_bracket(i - 1, k - 1, v);
  }
  return l;
}

Json to_json(const MatrixReport& m) {
  return Json{{"n", m.n},
              {"nonsingular", m.nonsingular},
              {"determinant", to_string(m.determinant)},
              {"trace", to_string(m.trace)},
              {"unimodular", m.unimodular},
              {"derogatory", m.derogatory},
              {"minimal_polynomial_degree", m.minimal_polynomial_degree},
              {"scalar_multiple_of_identity", m.scalar_multiple_of_identity}};
}

Json to_json(const AlgebraAnalysis& a) {
  return Json{{"dim", a.dim},
              {"solvable", a.solvable},
              {"nilpotent", a.nilpotent},
              {"radical_dim", a.radical_dim},
              {"levi_dim", a.levi_dim},
              {"derived_series_dims", a.derived_series_dims}};
}

Json to_json(const SymmetrySolution& sol, const std::optional<AlgebraAnalysis>& analysis) {
  const auto [lo, hi] = dimension_bounds(sol.n);
  Json gens = Json::array();
  const bool exact = sol.exact_fields();
  for (const auto& g : sol.generators) {
    Json e{{"class", to_string(g.cls)}};
    e["field"] = g.field ? to_string(*g.field) : std::string();
    e["exact"] = g.field.has_value();
    gens.push_back(e);
  }
  Json out{{"n", sol.n},
           {"A", to_json(sol.a)},
           {"classification", to_json(sol.classification)},
           {"dimension", sol.dimension},
           {"bounds", Json{{"lower", lo}, {"upper", hi}, {"applies", sol.within_bound_hypotheses}}},
           {"commutant_dim", sol.commutant.dimension},
           {"anticommutant_dim", sol.anticommutant.dimension},
           {"exact_fields", exact},
           {"generators", gens}};
  if (analysis)
    out["algebra"] = Json{{"radical_dim", analysis->radical_dim},
                          {"levi_dim", analysis->levi_dim},
                          {"solvable", analysis->solvable}};
  return out;
}

Json to_json(const ParamMap& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = to_string(v);
  return out;
}

Json to_json(const SpecialValueReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json e{{"params", to_json(p.params)}, {"singular", p.singular}};
    if (p.dimension) {
      e["dimension"] = *p.dimension;
      e["commutant_dim"] = p.commutant_dim;
      e["anticommutant_dim"] = p.anticommutant_dim;
    } else {
      e["dimension"] = nullptr;
    }
    e["derogatory"] = p.derogatory;
    pts.push_back(e);
  }
  Json jumps = Json::array();
  for (const auto i : r.jumps)
    jumps.push_back(Json{{"params", to_json(r.points[i].params)}, {"dimension", *r.points[i].dimension}});
  Json out{{"points", pts}};
  out["generic_dimension"] = r.generic_dimension ? Json(*r.generic_dimension) : Json(nullptr);
  out["jumps"] = jumps;
  out["singular_points"] = r.singular_count();
  return out;
}

Json to_json(const FamilyReport& r) {
  Json gens = Json::array();
  for (const auto& g : r.generators) {
    Json e{{"label", g.label},       {"field", g.text},
           {"corrected", g.corrected}, {"exact", g.exact},
           {"numeric_residual", g.numeric_residual}, {"numeric_ok", g.numeric_ok}};
    e["in_solver_span"] = g.in_solver_span ? Json(*g.in_solver_span) : Json(nullptr);
    gens.push_back(e);
  }
  Json corr = Json::array();
  for (const auto& c : r.corrections)
    corr.push_back(Json{{"label", c.label}, {"original", c.original}, {"corrected", c.corrected}, {"reason", c.reason}});
  Json out{{"family", r.family}, {"params", to_json(r.params)}, {"case", r.case_label},
           {"A", to_json(r.a)},  {"nonsingular", r.nonsingular}};
  out["solver_refused"] = r.solver_refused;
  if (r.solver_refused) out["refusal"] = r.refusal;
  out["expected_dimension"] = r.expected_dimension ? Json(*r.expected_dimension) : Json(nullptr);
  out["solver_dimension"] = r.solver_dimension ? Json(*r.solver_dimension) : Json(nullptr);
  out["listed_rank"] = r.listed_rank;
  out["spans_equal"] = r.spans_equal ? Json(*r.spans_equal) : Json(nullptr);
  out["bracket_table_consistent"] = r.bracket_table_consistent;
  out["generators"] = gens;
  out["corrections"] = corr;
  out["ok"] = r.ok;
  return out;
}

Json to_json(const StructureReport& r) {
  auto opt = [](const auto& o) { return o ? Json(*o) : Json(nullptr); };
  Json claim{{"solvable", opt(r.claim.solvable)},
             {"levi_dim", opt(r.claim.levi_dim)},
             {"radical_dim", opt(r.claim.radical_dim)},
             {"nilpotent_ideal", r.claim.nilpotent_ideal}};
  return Json{{"family", r.family},
              {"params", to_json(r.params)},
              {"case", r.case_label},
              {"source", r.source},
              {"analysis", to_json(r.analysis)},
              {"claim", claim},
              {"solvable_matches", opt(r.solvable_matches)},
              {"levi_matches", opt(r.levi_matches)},
              {"radical_matches", opt(r.radical_matches)},
              {"nilpotent_ideal_verified", opt(r.nilpotent_ideal_verified)},
              {"ok", r.ok}};
}

GeodesicState state_from_json(const nlohmann::json& j) {
  GeodesicState s;
  auto vec = [&](const char* key) {
    const auto v = j.at(key).get<std::vector<double>>();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  try {
    s.t = j.value("t", 0.0);
    s.x = vec("x");
    s.w = j.value("w", 0.0);
    s.u = vec("u");
    s.q = j.value("q", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad initial state: ") + e.what());
  }
  if (s.x.size() != s.u.size()) throw InputError("initial state: x and u differ in length");
  return s;
}

Json to_json(const GeodesicState& s) {
  return Json{{"t", s.t},
              {"x", std::vector<double>(s.x.data(), s.x.data() + s.x.size())},
              {"w", s.w},
              {"u", std::vector<double>(s.u.data(), s.u.data() + s.u.size())},
              {"q", s.q}};
}

std::vector<ParamMap> grid_from_json(const nlohmann::json& j) {
  try {
    if (j.is_object() && j.contains("axes")) {
      std::vector<std::pair<std::string, std::vector<Rational>>> axes;
      for (const auto& [name, values] : j.at("axes").items()) {
        std::vector<Rational> vs;
        for (const auto& v : values) vs.push_back(rational_from_json(v));
        axes.emplace_back(name, std::move(vs));
      }
      return grid_product(axes);
    }
    if (j.is_array()) {
      std::vector<ParamMap> out;
      for (const auto& p : j) {
        ParamMap m;
        for (const auto& [k, v] : p.items()) m[k] = rational_from_json(v);
        out.push_back(std::move(m));
      }
      return out;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad grid: ") + e.what());
  }
  throw InputError("grid must be a list of parameter objects or {\"axes\": {...}}");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace cansym
