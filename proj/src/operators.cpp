#include "cansym/operators.hpp"

namespace cansym {

namespace {

void require_square(const RatMatrix& a, const char* what) {
  if (!a.is_square())
    throw InputError(std::string(what) + ": matrix must be square, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

}  // namespace

RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

OperatorNullspace anticommutant(const RatMatrix& a) {
  require_square(a, "anticommutant");
  const std::size_t n = a.rows();
  const RatMatrix id = RatMatrix::identity(n);
  const RatMatrix op = kronecker(id, a) + kronecker(a.transpose(), id);
  OperatorNullspace out;
  for (const auto& v : nullspace_basis(op)) out.basis.push_back(RatMatrix::unvec(v, n, n));
  out.dimension = out.basis.size();
  return out;
}

OperatorNullspace commutant_pairs(const RatMatrix& a) {
  require_square(a, "commutant_pairs");
  const std::size_t n = a.rows(), nn = n * n;
  const RatMatrix id = RatMatrix::identity(n);
  const RatMatrix comm = kronecker(a.transpose(), id) - kronecker(id, a);
  const RatVector va = a.vec();
  RatMatrix op(nn, nn + 1);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = 0; j < nn; ++j) op(i, j) = comm(i, j);
    op(i, nn) = -va[i];
  }
  OperatorNullspace out;
  for (auto& v : nullspace_basis(op)) {
    out.h.push_back(v[nn]);
    v.pop_back();
    out.basis.push_back(RatMatrix::unvec(v, n, n));
  }
  out.dimension = out.basis.size();
  return out;
}

RatVector minimal_polynomial(const RatMatrix& a) {
  require_square(a, "minimal_polynomial");
  const std::size_t n = a.rows();
  std::vector<RatVector> powers;  // vec(A^k), k = 0, 1, ...
  RatMatrix p = RatMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const RatVector target = p.vec();
    if (!powers.empty()) {
      // Columns are the previous powers; solve sum c_i vec(A^i) = vec(A^k).
      RatMatrix basis(n * n, powers.size());
      for (std::size_t j = 0; j < powers.size(); ++j)
        for (std::size_t i = 0; i < n * n; ++i) basis(i, j) = powers[j][i];
      if (auto c = solve_linear(basis, target)) {
        RatVector coeffs(k + 1);
        for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*c)[i];
        coeffs[k] = 1;
        return coeffs;
      }
    }
    powers.push_back(target);
    p = p * a;
  }
  throw std::logic_error("minimal_polynomial: no dependence up to degree n");
}

bool is_derogatory(const RatMatrix& a) {
  return minimal_polynomial(a).size() - 1 < a.rows();
}

RatMatrix evaluate_polynomial(const RatVector& coeffs, const RatMatrix& a) {
  require_square(a, "evaluate_polynomial");
  RatMatrix acc = RatMatrix::zero(a.rows(), a.cols());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * a + *it * RatMatrix::identity(a.rows());
  return acc;
}

}  // namespace cansym
