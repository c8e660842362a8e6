#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "cansym/rational.hpp"

namespace cansym {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  /// Row-wise literal, e.g. RatMatrix{{1, 2}, {3, 4}}.
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static RatMatrix diagonal(const RatVector& d);
  /// Unit matrix with a single one at (i, j).
  static RatMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<Rational>& entries() const { return data_; }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;

  RatMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;

  RatMatrix& operator+=(const RatMatrix& o);
  RatMatrix& operator-=(const RatMatrix& o);
  RatMatrix& operator*=(const Rational& s);

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }
  friend RatMatrix operator-(RatMatrix a) { return a *= Rational(-1); }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& v);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b);

  /// Column-stacking vectorization: vec(M)[i + j*rows] = M(i, j).
  RatVector vec() const;
  static RatMatrix unvec(const RatVector& v, std::size_t rows, std::size_t cols);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Exact reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);

/// Basis of {v : M v = 0}; one vector per free column, with a one in that
/// column and zeros in the other free columns.
std::vector<RatVector> nullspace_basis(const RatMatrix& m);

/// Some solution of M x = b, or nullopt when the system is inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& b);

Rational determinant(const RatMatrix& m);

/// Characteristic polynomial det(xI - A), coefficients low to high
/// (monic, size n+1).
RatVector characteristic_polynomial(const RatMatrix& a);

/// Matrix whose rows are the given vectors.
RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t width);

}  // namespace cansym
