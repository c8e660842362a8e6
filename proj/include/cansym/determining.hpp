#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cansym/rat_matrix.hpp"
#include "cansym/vector_field.hpp"

namespace cansym {

/// Second-order system y''^a = -Gamma^a_{bc} y'^b y'^c with constant Gamma
/// on coordinates (x^1..x^n[, w]).
class GeodesicSystem {
 public:
  /// Canonical-connection system of the codimension-one algebra built from
  /// A: x'' = (A x') w', w'' = 0. Gamma^i_{j,w} = Gamma^i_{w,j} = -A(i,j)/2.
  static GeodesicSystem codim_one(const RatMatrix& a);
  /// x'' = 0 on n coordinates (no w).
  static GeodesicSystem free_particle(int n);

  int n() const { return n_; }
  bool has_w() const { return has_w_; }
  /// Number of spatial coordinates N = n + has_w.
  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Var>& coords() const { return coords_; }
  const std::optional<RatMatrix>& matrix() const { return a_; }

  /// Gamma^a_{bc} with 0-based coordinate indices (w is index n).
  const Rational& gamma(int a, int b, int c) const;

 private:
  GeodesicSystem(int n, bool has_w);
  Rational& gamma_ref(int a, int b, int c);

  int n_ = 0;
  bool has_w_ = false;
  std::vector<Var> coords_;
  std::vector<Rational> gamma_;
  std::optional<RatMatrix> a_;
};

/// Polynomial in the velocities v^1..v^N with ScalarExpr coefficients.
/// For codimension-one systems v = (u^1..u^n, q) with q = w'.
class VelocityPoly {
 public:
  using Monomial = std::vector<int>;

  explicit VelocityPoly(int nvars = 0) : nvars_(nvars) {}
  static VelocityPoly constant(int nvars, const ScalarExpr& c);
  static VelocityPoly velocity(int nvars, int b);

  int nvars() const { return nvars_; }
  const std::map<Monomial, ScalarExpr>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ScalarExpr coefficient(const Monomial& m) const;

  void add(const Monomial& m, const ScalarExpr& c);
  VelocityPoly& operator+=(const VelocityPoly& o);
  VelocityPoly& operator-=(const VelocityPoly& o);
  friend VelocityPoly operator+(VelocityPoly a, const VelocityPoly& b) { return a += b; }
  friend VelocityPoly operator-(VelocityPoly a, const VelocityPoly& b) { return a -= b; }
  friend VelocityPoly operator*(const VelocityPoly& a, const VelocityPoly& b);
  friend VelocityPoly operator*(const ScalarExpr& s, const VelocityPoly& p);
  friend bool operator==(const VelocityPoly&, const VelocityPoly&) = default;

  /// Derivative of every coefficient in the coordinate v.
  VelocityPoly differentiate(Var v) const;
  /// Partial derivative in the velocity v^b.
  VelocityPoly d_velocity(int b) const;

  std::string to_string(int n, const std::vector<std::string>& velocity_names) const;

 private:
  int nvars_;
  std::map<Monomial, ScalarExpr> terms_;
};

/// Velocity names for a system: u1..un and q for w'.
std::vector<std::string> velocity_names(const GeodesicSystem& s);

struct Residual {
  std::string label;
  ScalarExpr expr;
};

/// First prolongation coefficients P^a = D(eta^a) - v^a D(xi), one per
/// coordinate, D the total derivative along the spray.
std::vector<VelocityPoly> prolong(const VectorField& x, const GeodesicSystem& s);

/// Velocity coefficients of [X~, Gamma] - lambda Gamma (lambda = -D xi), with
/// X~ the prolonged field and Gamma the spray. Works for any constant Gamma.
/// Labels look like "u[x] q^2".
std::vector<Residual> spray_residuals(const VectorField& x, const GeodesicSystem& s);

/// Conditions (i)-(xv) for codimension-one systems (ordering and labels
/// follow the classical list); for other systems falls back to
/// spray_residuals. X is a symmetry iff every entry is zero.
std::vector<Residual> determining_residuals(const VectorField& x, const GeodesicSystem& s);

struct SymmetryVerdict {
  bool is_symmetry = false;
  /// lambda = -D(xi), linear in the velocities.
  VelocityPoly lambda;
  /// Labels of residuals that did not vanish.
  std::vector<std::string> failing;
};

SymmetryVerdict is_symmetry(const VectorField& x, const GeodesicSystem& s);

}  // namespace cansym
