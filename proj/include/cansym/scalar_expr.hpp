#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cansym/rational.hpp"

namespace cansym {

/// A coordinate: time t, the distinguished coordinate w, or x^i (0-based).
struct Var {
  enum class Kind : std::uint8_t { T, W, X };
  Kind kind = Kind::T;
  int index = 0;

  static Var t() { return {Kind::T, 0}; }
  static Var w() { return {Kind::W, 0}; }
  static Var x(int i) { return {Kind::X, i}; }

  friend bool operator==(const Var&, const Var&) = default;
};

/// Name of x^i when there are n of them: x, y, z for n <= 3, else x1..xn.
std::string x_name(int i, int n);
std::string var_name(Var v, int n);

enum class Trig : std::uint8_t { None = 0, Sin = 1, Cos = 2 };

/// One basis function t^a w^b prod (x^i)^{c_i} e^{rho w} trig(sigma w).
/// Distinct atoms are linearly independent, so a sum of atoms with nonzero
/// coefficients is never the zero function.
struct Atom {
  int t_pow = 0;
  int w_pow = 0;
  std::vector<int> x_pow;  // trailing zeros trimmed
  Rational rho = 0;
  Trig trig = Trig::None;
  Rational sigma = 0;  // > 0 when trig != None, else 0

  int x_power(int i) const {
    return i < static_cast<int>(x_pow.size()) ? x_pow[static_cast<std::size_t>(i)] : 0;
  }
  void set_x_power(int i, int p);

  friend bool operator<(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b) = default;
};

struct EvalPoint {
  double t = 0;
  double w = 0;
  std::vector<double> x;
};

/// Exact closed-form scalar expression in (t, w, x^i): a canonical finite
/// sum of Atoms with nonzero rational coefficients. Equality and the zero
/// test are structural.
class ScalarExpr {
 public:
  using Terms = std::map<Atom, Rational>;

  ScalarExpr() = default;
  ScalarExpr(const Rational& c);  // NOLINT(google-explicit-constructor)
  ScalarExpr(int c) : ScalarExpr(Rational(c)) {}  // NOLINT

  static ScalarExpr variable(Var v);
  static ScalarExpr t() { return variable(Var::t()); }
  static ScalarExpr w() { return variable(Var::w()); }
  static ScalarExpr x(int i) { return variable(Var::x(i)); }
  /// e^{rho w}, sin(sigma w), cos(sigma w).
  static ScalarExpr exp_w(const Rational& rho);
  static ScalarExpr sin_w(const Rational& sigma);
  static ScalarExpr cos_w(const Rational& sigma);
  static ScalarExpr from_atom(Atom atom, const Rational& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Value when the expression is a constant; nullopt-like false otherwise.
  bool is_constant() const;
  Rational constant_value() const;

  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);
  ScalarExpr& operator*=(const Rational& s);

  friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
  friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
  friend ScalarExpr operator-(ScalarExpr a) { return a *= Rational(-1); }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(ScalarExpr a, const Rational& s) { return a *= s; }
  friend ScalarExpr operator*(const Rational& s, ScalarExpr a) { return a *= s; }
  friend bool operator==(const ScalarExpr&, const ScalarExpr&) = default;

  ScalarExpr pow(int k) const;
  ScalarExpr differentiate(Var v) const;
  double evaluate(const EvalPoint& p) const;

  /// Largest x index appearing plus one.
  int x_extent() const;
  /// True when no atom involves t, any x^i, or an exponential/trig in w
  /// other than through the given allowed pieces; used by the parser.
  bool is_rational_multiple_of_w(Rational& factor) const;

  /// Canonical text, e.g. "2*t*x^2*exp(3/2*w)*cos(w) - y".
  std::string to_string(int n) const;

 private:
  void add_term(const Atom& a, const Rational& c);
  Terms terms_;
};

ScalarExpr differentiate(const ScalarExpr& e, Var v);

}  // namespace cansym
