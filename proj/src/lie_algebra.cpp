#include "cansym/lie_algebra.hpp"

namespace cansym {

// ---------------------------------------------------------------- subspaces

Subspace span_of(const std::vector<RatVector>& vectors, std::size_t ambient) {
  Subspace s;
  s.ambient = ambient;
  if (vectors.empty()) return s;
  const auto red = rref(from_rows(vectors, ambient));
  for (std::size_t r = 0; r < red.rank; ++r) s.basis.push_back(red.reduced.row(r));
  return s;
}

bool Subspace::contains(const RatVector& v) const {
  std::vector<RatVector> rows = basis;
  rows.push_back(v);
  return rank(from_rows(rows, ambient)) == basis.size();
}

bool Subspace::contains(const Subspace& other) const {
  std::vector<RatVector> rows = basis;
  rows.insert(rows.end(), other.basis.begin(), other.basis.end());
  return rank(from_rows(rows, ambient)) == basis.size();
}

Subspace whole_space(std::size_t dim) {
  Subspace s;
  s.ambient = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector e(dim);
    e[i] = 1;
    s.basis.push_back(std::move(e));
  }
  return s;
}

// ---------------------------------------------------------------- algebra

LieAlgebra::LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

LieAlgebra LieAlgebra::heisenberg() {
  LieAlgebra l(3);
  l.set_bracket(0, 1, {0, 0, 1});
  return l;
}

LieAlgebra LieAlgebra::sl2() {
  LieAlgebra l(3);
  l.set_bracket(0, 1, {0, 2, 0});
  l.set_bracket(0, 2, {0, 0, -2});
  l.set_bracket(1, 2, {1, 0, 0});
  return l;
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const RatVector& coeffs) {
  if (i >= dim_ || j >= dim_ || coeffs.size() != dim_)
    throw InputError("set_bracket: index or size out of range");
  if (i == j) {
    for (const auto& v : coeffs)
      if (sgn(v) != 0) throw InputError("set_bracket: [e_i, e_i] must vanish");
    return;
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    c_[(i * dim_ + j) * dim_ + k] = coeffs[k];
    c_[(j * dim_ + i) * dim_ + k] = -coeffs[k];
  }
}

RatVector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  RatVector v(dim_);
  for (std::size_t k = 0; k < dim_; ++k) v[k] = c(i, j, k);
  return v;
}

RatVector LieAlgebra::bracket(const RatVector& u, const RatVector& v) const {
  if (u.size() != dim_ || v.size() != dim_) throw InputError("bracket: vector size mismatch");
  RatVector r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(v[j]) == 0) continue;
      const Rational f = u[i] * v[j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (sgn(c(i, j, k)) != 0) r[k] += f * c(i, j, k);
    }
  }
  return r;
}

RatMatrix LieAlgebra::ad(std::size_t i) const {
  RatMatrix m(dim_, dim_);
  for (std::size_t col = 0; col < dim_; ++col)
    for (std::size_t k = 0; k < dim_; ++k) m(k, col) = c(i, col, k);
  return m;
}

JacobiReport validate_jacobi(const LieAlgebra& l) {
  JacobiReport rep;
  const std::size_t d = l.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (l.c(i, j, k) != -l.c(j, i, k)) {
          rep.ok = false;
          rep.antisymmetry_violation = true;
          rep.violation = std::array<std::size_t, 3>{i, j, i};
          return rep;
        }
  auto unit = [d](std::size_t i) {
    RatVector e(d);
    e[i] = 1;
    return e;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        const auto ei = unit(i), ej = unit(j), ek = unit(k);
        RatVector s = l.bracket(ei, l.bracket(ej, ek));
        const RatVector b = l.bracket(ej, l.bracket(ek, ei));
        const RatVector c = l.bracket(ek, l.bracket(ei, ej));
        bool zero = true;
        for (std::size_t m = 0; m < d; ++m)
          if (sgn(s[m] + b[m] + c[m]) != 0) zero = false;
        if (!zero) {
          rep.ok = false;
          rep.violation = std::array<std::size_t, 3>{i, j, k};
          return rep;
        }
      }
  return rep;
}

CodimOneAlgebra codim1_algebra(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("codim1_algebra: matrix must be square");
  CodimOneAlgebra out;
  out.n = a.rows();
  out.a = a;
  out.algebra = LieAlgebra(out.n + 1);
  for (std::size_t j = 0; j < out.n; ++j) {
    RatVector coeffs(out.n + 1);
    for (std::size_t i = 0; i < out.n; ++i) coeffs[i] = a(i, j);
    out.algebra.set_bracket(j, out.n, coeffs);
  }
  out.trace = a.trace();
  out.nonsingular = sgn(determinant(a)) != 0;
  out.unimodular = sgn(out.trace) == 0;
  if (!validate_jacobi(out.algebra).ok)
    throw std::logic_error("codim1_algebra: Jacobi identity failed");
  return out;
}

RatVector curvature(const LieAlgebra& l, std::size_t i, std::size_t j, std::size_t k) {
  if (i >= l.dim() || j >= l.dim() || k >= l.dim()) throw InputError("curvature: index out of range");
  RatVector ek(l.dim());
  ek[k] = 1;
  RatVector r = l.bracket(l.bracket_basis(i, j), ek);
  for (auto& v : r) v /= 4;
  return r;
}

bool is_flat(const LieAlgebra& l) {
  const Subspace d = derived_algebra(l);
  return bracket_span(l, d, whole_space(l.dim())).dim() == 0;
}

BilinearForm ricci(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  RatMatrix r(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rational s = 0;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t m = 0; m < d; ++m) s += l.c(j, m, a) * l.c(i, a, m);
      r(i, j) = s / 4;
    }
  return {r};
}

BilinearForm killing_form(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  std::vector<RatMatrix> ads;
  for (std::size_t i = 0; i < d; ++i) ads.push_back(l.ad(i));
  RatMatrix k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  return {k};
}

bool is_semisimple(const LieAlgebra& l) {
  return l.dim() > 0 && rank(killing_form(l).entries) == l.dim();
}

Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<RatVector> images;
  for (const auto& u : a.basis)
    for (const auto& v : b.basis) images.push_back(l.bracket(u, v));
  return span_of(images, l.dim());
}

Subspace derived_algebra(const LieAlgebra& l) {
  std::vector<RatVector> images;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) images.push_back(l.bracket_basis(i, j));
  return span_of(images, l.dim());
}

std::vector<Subspace> derived_series(const LieAlgebra& l) {
  std::vector<Subspace> series{whole_space(l.dim())};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(l, series.back(), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& l) {
  const Subspace g = whole_space(l.dim());
  std::vector<Subspace> series{g};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(l, g, series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(std::move(next));
  }
  return series;
}

Subspace center(const LieAlgebra& l) {
  // x central iff sum_i x_i C(i, j, k) = 0 for all j, k.
  const std::size_t d = l.dim();
  RatMatrix m(d * d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < d; ++i) m(j * d + k, i) = l.c(i, j, k);
  return span_of(nullspace_basis(m), d);
}

bool is_solvable(const LieAlgebra& l) { return derived_series(l).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& l) { return lower_central_series(l).back().dim() == 0; }

std::vector<RatVector> biinvariant_oneforms(const LieAlgebra& l) {
  const Subspace d = derived_algebra(l);
  if (d.dim() == 0) return whole_space(l.dim()).basis;
  return nullspace_basis(from_rows(d.basis, l.dim()));
}

Subspace radical_via_killing(const LieAlgebra& l) {
  const std::size_t d = l.dim();
  const RatMatrix k = killing_form(l).entries;
  const Subspace der = derived_algebra(l);
  if (der.dim() == 0) return whole_space(d);
  std::vector<RatVector> rows;
  for (const auto& y : der.basis) rows.push_back(k * y);
  return span_of(nullspace_basis(from_rows(rows, d)), d);
}

bool is_subalgebra(const LieAlgebra& l, const Subspace& s) {
  return s.contains(bracket_span(l, s, s));
}

bool is_ideal(const LieAlgebra& l, const Subspace& s) {
  return s.contains(bracket_span(l, whole_space(l.dim()), s));
}

bool verify_nilpotent_ideal(const LieAlgebra& l, const std::vector<RatVector>& candidate) {
  const Subspace s = span_of(candidate, l.dim());
  if (!is_ideal(l, s)) return false;
  Subspace cur = s;
  while (cur.dim() > 0) {
    Subspace next = bracket_span(l, s, cur);
    if (next.dim() == cur.dim()) return false;
    cur = std::move(next);
  }
  return true;
}

}  // namespace cansym
