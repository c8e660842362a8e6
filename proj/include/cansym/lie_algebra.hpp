#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cansym/rat_matrix.hpp"

namespace cansym {

/// Subspace of Q^d stored as the nonzero rows of a reduced echelon form,
/// so equal subspaces have identical bases.
struct Subspace {
  std::size_t ambient = 0;
  std::vector<RatVector> basis;

  std::size_t dim() const { return basis.size(); }
  bool contains(const RatVector& v) const;
  bool contains(const Subspace& other) const;
  friend bool operator==(const Subspace&, const Subspace&) = default;
};

Subspace span_of(const std::vector<RatVector>& vectors, std::size_t ambient);

/// Finite-dimensional Lie algebra by structure constants:
/// [e_i, e_j] = sum_k C(i, j, k) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim);

  static LieAlgebra abelian(std::size_t dim) { return LieAlgebra(dim); }
  /// [e_1, e_2] = e_3.
  static LieAlgebra heisenberg();
  /// sl(2): [h, e] = 2e, [h, f] = -2f, [e, f] = h in basis (h, e, f).
  static LieAlgebra sl2();

  std::size_t dim() const { return dim_; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  /// Sets [e_i, e_j] = coeffs and [e_j, e_i] = -coeffs.
  void set_bracket(std::size_t i, std::size_t j, const RatVector& coeffs);
  /// Raw write of one constant, no antisymmetrization (for building
  /// arbitrary tensors, e.g. to exercise validate_jacobi).
  void set_constant(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    c_.at((i * dim_ + j) * dim_ + k) = v;
  }
  RatVector bracket_basis(std::size_t i, std::size_t j) const;
  RatVector bracket(const RatVector& u, const RatVector& v) const;
  /// Matrix of ad(e_i): column m holds [e_i, e_m].
  RatMatrix ad(std::size_t i) const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

struct JacobiReport {
  bool ok = true;
  /// First violating triple (or pair, for antisymmetry, with k = i).
  std::optional<std::array<std::size_t, 3>> violation;
  bool antisymmetry_violation = false;
};

JacobiReport validate_jacobi(const LieAlgebra& l);

/// Solvable algebra with abelian ideal span{e_1..e_n} and e_{n+1} acting by
/// the matrix A: [e_j, e_{n+1}] = sum_i A(i, j) e_i, so the canonical
/// geodesics read x'' = (A x') w'.
struct CodimOneAlgebra {
  std::size_t n = 0;
  RatMatrix a;
  LieAlgebra algebra;
  bool nonsingular = false;
  Rational trace;
  bool unimodular = false;  // trace A = 0
};

CodimOneAlgebra codim1_algebra(const RatMatrix& a);

/// R(e_i, e_j) e_k = 1/4 [[e_i, e_j], e_k].
RatVector curvature(const LieAlgebra& l, std::size_t i, std::size_t j, std::size_t k);
bool is_flat(const LieAlgebra& l);

/// Symmetric bilinear form in the basis e_1..e_d.
struct BilinearForm {
  RatMatrix entries;
  std::size_t dim() const { return entries.rows(); }
  bool is_symmetric() const { return entries == entries.transpose(); }
};

/// R_ij = 1/4 C^l_{jm} C^m_{il}, contracted directly from the constants.
BilinearForm ricci(const LieAlgebra& l);
/// K_ij = tr(ad e_i ad e_j) from explicit ad matrices.
BilinearForm killing_form(const LieAlgebra& l);
bool is_semisimple(const LieAlgebra& l);

Subspace whole_space(std::size_t dim);
/// span of [u, v] for u in a, v in b.
Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b);
Subspace derived_algebra(const LieAlgebra& l);
/// g, [g,g], [[g,g],[g,g]], ... until it stabilizes (last entry repeats
/// nothing).
std::vector<Subspace> derived_series(const LieAlgebra& l);
/// g, [g,g], [g,[g,g]], ... until it stabilizes.
std::vector<Subspace> lower_central_series(const LieAlgebra& l);
Subspace center(const LieAlgebra& l);
bool is_solvable(const LieAlgebra& l);
bool is_nilpotent(const LieAlgebra& l);

/// Annihilator of [g, g]: the closed (hence bi-invariant) invariant
/// one-forms, as covectors.
std::vector<RatVector> biinvariant_oneforms(const LieAlgebra& l);

/// {x : K(x, [g, g]) = 0}, the solvable radical by Cartan's criterion.
Subspace radical_via_killing(const LieAlgebra& l);

/// Is span(candidate) an ideal whose lower central series reaches zero?
bool verify_nilpotent_ideal(const LieAlgebra& l, const std::vector<RatVector>& candidate);
bool is_ideal(const LieAlgebra& l, const Subspace& s);
bool is_subalgebra(const LieAlgebra& l, const Subspace& s);

}  // namespace cansym
