#pragma once

#include <json.hpp>

#include "cansym/catalog.hpp"
#include "cansym/determining.hpp"
#include "cansym/geodesics.hpp"
#include "cansym/lie_algebra.hpp"
#include "cansym/solver.hpp"
#include "cansym/sweep.hpp"

namespace cansym {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "entries": ["p/q", ...] row-major}.
Json to_json(const RatMatrix& m);
/// Accepts the form above or a nested array of rows; entries may be
/// integers or "p/q" strings. Throws InputError on anything else.
RatMatrix matrix_from_json(const nlohmann::json& j);

/// {"dim", "brackets": [{"i", "j", "coeffs"}]} with i < j, nonzero only,
/// 1-based indices.
Json to_json(const LieAlgebra& l);
LieAlgebra lie_algebra_from_json(const nlohmann::json& j);

Json to_json(const MatrixReport& m);
Json to_json(const AlgebraAnalysis& a);
Json to_json(const SymmetrySolution& sol, const std::optional<AlgebraAnalysis>& analysis);
Json to_json(const SpecialValueReport& r);
Json to_json(const FamilyReport& r);
Json to_json(const StructureReport& r);
Json to_json(const ParamMap& p);

/// {"t", "x": [...], "w", "u": [...], "q"}; t defaults to 0.
GeodesicState state_from_json(const nlohmann::json& j);
Json to_json(const GeodesicState& s);

/// Grid file: either a list of parameter objects, or {"axes": {"a": [...], ...}}
/// expanded as a Cartesian product in key order.
std::vector<ParamMap> grid_from_json(const nlohmann::json& j);

/// Reads a whole file and parses it; InputError on I/O or syntax errors.
nlohmann::json read_json_file(const std::string& path);

}  // namespace cansym
