#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cansym/scalar_expr.hpp"

namespace cansym {

/// Point vector field xi D_t + eta^i D_{x^i} + etaw D_w on (t, x^1..x^n, w).
/// Systems without a w coordinate keep etaw = 0.
struct VectorField {
  ScalarExpr xi;
  std::vector<ScalarExpr> eta;
  ScalarExpr etaw;

  VectorField() = default;
  explicit VectorField(int n) : eta(static_cast<std::size_t>(n)) {}

  int n() const { return static_cast<int>(eta.size()); }

  static VectorField d_t(int n);
  static VectorField d_w(int n);
  static VectorField d_x(int n, int i);

  /// Coefficient along coordinate v.
  const ScalarExpr& component(Var v) const;
  ScalarExpr& component(Var v);

  /// X(f) = xi f_t + eta^i f_i + etaw f_w.
  ScalarExpr apply(const ScalarExpr& f) const;

  bool is_zero() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const ScalarExpr& f, const VectorField& x);
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// [X, Y]^k = X(Y^k) - Y(X^k).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Parses the compact text form, e.g. "x*exp(w)*Dy + sin(w)*Dx".
/// Grammar (whitespace-insensitive):
///   field   := sum of terms, each a product containing exactly one operator
///              Dt, Dw, Dx/Dy/Dz (n <= 3) or Dx1..Dxn
///   factors := numbers, p/q, t, w, x/y/z or x1..xn, named parameters,
///              exp(c*w), sin(c*w), cos(c*w) with c rational,
///              integer powers ^k, parentheses, unary minus, division by a
///              nonzero constant.
/// Throws InputError on anything else.
VectorField parse_field(std::string_view text, int n, bool has_w = true,
                        const std::map<std::string, Rational>& params = {});

/// Parses a scalar expression with the same factor grammar.
ScalarExpr parse_scalar(std::string_view text, int n, bool has_w = true,
                        const std::map<std::string, Rational>& params = {});

/// Canonical text form; parse_field(to_string(X)) == X.
std::string to_string(const VectorField& x);

}  // namespace cansym
