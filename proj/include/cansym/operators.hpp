#pragma once

#include <vector>

#include "cansym/rat_matrix.hpp"

namespace cansym {

/// Solution space of a linear matrix equation in an unknown square matrix.
/// For commutant pairs each basis matrix R carries its scalar H.
struct OperatorNullspace {
  std::size_t dimension = 0;
  std::vector<RatMatrix> basis;
  std::vector<Rational> h;  // empty for the anticommutant
};

/// Kronecker product.
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);

/// {P : AP + PA = 0}. Built as the nullspace of I (x) A + A^T (x) I acting on
/// column-stacked vec(P).
OperatorNullspace anticommutant(const RatMatrix& a);

/// {(R, H) : RA - AR = H A}. Unknown vector is (vec(R), H).
OperatorNullspace commutant_pairs(const RatMatrix& a);

/// Monic minimal polynomial, coefficients low to high: the first linear
/// dependence among I, A, A^2, ...
RatVector minimal_polynomial(const RatMatrix& a);
bool is_derogatory(const RatMatrix& a);

/// p(A) for coefficients low to high.
RatMatrix evaluate_polynomial(const RatVector& coeffs, const RatMatrix& a);

}  // namespace cansym
