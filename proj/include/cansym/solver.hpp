#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cansym/lie_algebra.hpp"
#include "cansym/operators.hpp"
#include "cansym/spectrum.hpp"
#include "cansym/vector_field.hpp"

namespace cansym {

/// Raised by solve() when A is singular; the closed-form integration of the
/// determining equations needs det A != 0.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Point symmetry in parameter form:
///   xi     = L t + K + G w
///   eta_w  = H w + J
///   eta_x  = R x + S + e^{wA} (P x + T)
/// with [R, A] = H A and A P + P A = 0.
struct SymmetryParameters {
  Rational l, k, g, j, h;
  RatVector s, t;
  RatMatrix r, p;

  static SymmetryParameters zero(std::size_t n);
  /// Flat layout (L, K, G, J, H, S, T, vec R, vec P).
  RatVector to_vector() const;
  static SymmetryParameters from_vector(const RatVector& v, std::size_t n);
  friend bool operator==(const SymmetryParameters&, const SymmetryParameters&) = default;
};

enum class GeneratorClass {
  TimeTranslate,
  TimeDilate,
  WTime,
  WTranslate,
  RightInvariant,
  LeftInvariant,
  RType,
  PType,
};

std::string to_string(GeneratorClass c);

struct Generator {
  GeneratorClass cls;
  SymmetryParameters params;
  /// Closed-form field when e^{wA} is available symbolically.
  std::optional<VectorField> field;
};

struct MatrixReport {
  std::size_t n = 0;
  bool nonsingular = false;
  Rational determinant;
  Rational trace;
  bool unimodular = false;
  bool derogatory = false;
  std::size_t minimal_polynomial_degree = 0;
  /// A = lambda I with lambda != 0.
  bool scalar_multiple_of_identity = false;
};

MatrixReport classify_matrix(const RatMatrix& a);

/// (3n + 4, n^2 + 2n + 4).
std::pair<std::size_t, std::size_t> dimension_bounds(std::size_t n);

struct SymmetrySolution {
  std::size_t n = 0;
  RatMatrix a;
  MatrixReport classification;
  OperatorNullspace commutant;      // (R, H) pairs
  OperatorNullspace anticommutant;  // P
  std::vector<Generator> generators;
  std::size_t dimension = 0;
  /// e^{wA} in closed form, when the spectrum allows it.
  std::optional<ExprMatrix> exp_wa;
  /// Nonsingular with nonzero trace: the dimension bounds apply.
  bool within_bound_hypotheses = false;

  bool exact_fields() const { return exp_wa.has_value(); }
  std::vector<VectorField> fields() const;
};

struct SolveOptions {
  /// Run the determining equations on every closed-form generator.
  bool verify_fields = true;
};

/// Full symmetry basis of x'' = (A x') w', w'' = 0 for nonsingular A:
/// D_t, t D_t, w D_t, D_w, the D_{x^i}, the columns of e^{wA}, one field per
/// commutant pair and one per anticommutant element.
SymmetrySolution solve(const RatMatrix& a, const SolveOptions& opts = {});

/// Residual matrices of the algebraic conditions: A P + P A and
/// R A - A R - H A. Both vanish for every valid parameter set.
std::pair<RatMatrix, RatMatrix> structured_residuals(const SymmetryParameters& p, const RatMatrix& a);

/// Field for a parameter set given e^{wA}.
VectorField field_from_parameters(const SymmetryParameters& p, const ExprMatrix& exp_wa);

/// [X1, X2] in parameter form (valid when H = 0 for both, which always holds
/// for nonsingular A).
SymmetryParameters bracket_parameters(const SymmetryParameters& x1, const SymmetryParameters& x2,
                                      const RatMatrix& a);

/// Structure constants of the symmetry algebra in the generator basis,
/// using the parameter-form bracket. Throws std::logic_error if a bracket
/// leaves the span.
LieAlgebra structure_constants_of(const SymmetrySolution& sol);

struct AlgebraAnalysis {
  std::size_t dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  std::size_t radical_dim = 0;
  std::size_t levi_dim = 0;
  std::vector<std::size_t> derived_series_dims;
};

AlgebraAnalysis analyze_symmetry_algebra(const LieAlgebra& l);

}  // namespace cansym
