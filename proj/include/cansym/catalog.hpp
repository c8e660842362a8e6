#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cansym/lie_algebra.hpp"
#include "cansym/numeric_residual.hpp"
#include "cansym/solver.hpp"
#include "cansym/vector_field.hpp"

namespace cansym {

struct ListedGenerator {
  std::string label;
  std::string text;  // parser syntax, may mention the family parameters
};

/// A transcription fix applied to a listed generator.
struct Correction {
  std::string label;
  std::string original;
  std::string corrected;
  std::string reason;
};

struct StructureClaim {
  std::optional<bool> solvable;
  std::optional<std::size_t> levi_dim;
  std::optional<std::size_t> radical_dim;
  /// Labels of listed generators claimed to span a nilpotent ideal.
  std::vector<std::string> nilpotent_ideal;
};

struct CaseSpec {
  std::string label;
  std::string condition;
  std::vector<ParamMap> samples;
  std::size_t expected_dimension = 0;
  std::vector<ListedGenerator> generators;
  std::vector<Correction> corrections;
  StructureClaim structure;
};

struct BracketEntry {
  std::size_t i = 0, j = 0;  // 1-based
  std::vector<std::string> coeffs;
};

struct FamilySpec {
  std::string name;
  std::vector<std::string> parameters;
  std::string domain;
  std::vector<std::vector<std::string>> matrix;
  std::vector<BracketEntry> brackets;
  /// Basis index (1-based) of the coordinate x, y, z.
  std::vector<std::size_t> coordinate_basis;
  /// "direct": bracket table action matrix equals A; "transposed": equals A^T.
  std::string bracket_orientation;
  std::string orientation_note;
  std::vector<CaseSpec> cases;

  /// Throws InputError for missing, unknown or out-of-range parameters.
  void validate(const ParamMap& params) const;
  /// A from the displayed geodesics; validates first.
  RatMatrix build(const ParamMap& params) const;
  /// The bracket table with basis reordered to coordinate order
  /// (x, y, z, then the acting element).
  LieAlgebra bracket_table(const ParamMap& params) const;
  /// The listed case whose conditions hold at params, if any.
  const CaseSpec* match_case(const ParamMap& params) const;
};

/// All five families, parsed from the embedded fixture file.
const std::vector<FamilySpec>& catalog();
/// Throws InputError for an unknown name.
const FamilySpec& family_spec(const std::string& name);

struct FamilyInstance {
  const FamilySpec* spec = nullptr;
  ParamMap params;
  CodimOneAlgebra algebra;
  const CaseSpec* expected = nullptr;
};

FamilyInstance get_family(const std::string& name, const ParamMap& params);

/// Parses "a=1,b=-1/2" (also accepts ';' or whitespace separators).
ParamMap parse_params(const std::string& text);

struct GeneratorVerdict {
  std::string label;
  std::string text;
  bool corrected = false;
  bool exact = false;           // determining equations vanish identically
  double numeric_residual = 0;  // max over the seeded samples
  bool numeric_ok = false;
  std::optional<bool> in_solver_span;
};

struct VerifyOptions {
  double tolerance = kDefaultTolerance;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
};

struct FamilyReport {
  std::string family;
  ParamMap params;
  std::string case_label;  // empty when no listed case applies
  RatMatrix a;
  bool nonsingular = false;
  bool solver_refused = false;
  std::string refusal;
  std::optional<std::size_t> expected_dimension;
  std::optional<std::size_t> solver_dimension;
  std::vector<GeneratorVerdict> generators;
  std::size_t listed_rank = 0;
  /// Listed and solver generators span the same space.
  std::optional<bool> spans_equal;
  bool bracket_table_consistent = false;
  std::vector<Correction> corrections;
  /// Every check that applies passed.
  bool ok = false;
};

FamilyReport verify_family(const std::string& name, const ParamMap& params,
                           const VerifyOptions& opts = {});

/// Every sample of every listed case, verified in parallel and returned in
/// catalog order.
std::vector<FamilyReport> verify_catalog(const VerifyOptions& opts = {});
std::vector<FamilyReport> verify_catalog_serial(const VerifyOptions& opts = {});

struct StructureReport {
  std::string family;
  ParamMap params;
  std::string case_label;
  AlgebraAnalysis analysis;
  /// "solver" for nonsingular A, "listed" when the listed fields were used.
  std::string source;
  StructureClaim claim;
  std::optional<bool> solvable_matches, levi_matches, radical_matches;
  std::optional<bool> nilpotent_ideal_verified;
  bool ok = false;
};

StructureReport structure_report(const std::string& name, const ParamMap& params);

}  // namespace cansym
