#pragma once

#include <optional>
#include <vector>

#include "cansym/rat_matrix.hpp"
#include "cansym/scalar_expr.hpp"

namespace cansym {

/// Eigenvalues of a rational matrix when all of them are rational or come
/// in conjugate pairs rho +- i sigma with rho, sigma rational.
struct RationalSpectrum {
  struct Real {
    Rational value;
    int multiplicity;
  };
  struct ComplexPair {
    Rational rho;
    Rational sigma;  // > 0
    int multiplicity;
  };
  std::vector<Real> real;
  std::vector<ComplexPair> complex;
};

/// nullopt when some eigenvalue has irrational real or imaginary part, or
/// when the irreducible non-linear part is not a power of one quadratic per
/// multiplicity class (covers every n <= 3 case).
std::optional<RationalSpectrum> rational_spectrum(const RatMatrix& a);

using ExprMatrix = std::vector<std::vector<ScalarExpr>>;

/// e^{wA} with entries in the closed-form expression class, or nullopt when
/// rational_spectrum fails. The result is checked against d/dw E = A E and
/// E(0) = I before returning.
std::optional<ExprMatrix> symbolic_exp(const RatMatrix& a);

/// Polynomial helpers over Q, coefficients low to high.
namespace poly {
RatVector trim(RatVector p);
RatVector derivative(const RatVector& p);
/// Quotient and remainder.
std::pair<RatVector, RatVector> divide(const RatVector& num, const RatVector& den);
RatVector gcd(RatVector a, RatVector b);
Rational evaluate(const RatVector& p, const Rational& x);
}  // namespace poly

}  // namespace cansym
