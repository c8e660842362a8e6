#include "cansym/solver.hpp"

#include "cansym/determining.hpp"

namespace cansym {

SymmetryParameters SymmetryParameters::zero(std::size_t n) {
  SymmetryParameters p;
  p.l = p.k = p.g = p.j = p.h = 0;
  p.s = RatVector(n);
  p.t = RatVector(n);
  p.r = RatMatrix(n, n);
  p.p = RatMatrix(n, n);
  return p;
}

RatVector SymmetryParameters::to_vector() const {
  RatVector v{l, k, g, j, h};
  v.insert(v.end(), s.begin(), s.end());
  v.insert(v.end(), t.begin(), t.end());
  const auto vr = r.vec(), vp = p.vec();
  v.insert(v.end(), vr.begin(), vr.end());
  v.insert(v.end(), vp.begin(), vp.end());
  return v;
}

SymmetryParameters SymmetryParameters::from_vector(const RatVector& v, std::size_t n) {
  if (v.size() != 5 + 2 * n + 2 * n * n) throw InputError("parameter vector has wrong size");
  SymmetryParameters p;
  p.l = v[0];
  p.k = v[1];
  p.g = v[2];
  p.j = v[3];
  p.h = v[4];
  auto at = v.begin() + 5;
  const auto nn = static_cast<std::ptrdiff_t>(n);
  p.s.assign(at, at + nn);
  at += nn;
  p.t.assign(at, at + nn);
  at += nn;
  p.r = RatMatrix::unvec(RatVector(at, at + nn * nn), n, n);
  at += nn * nn;
  p.p = RatMatrix::unvec(RatVector(at, at + nn * nn), n, n);
  return p;
}

std::string to_string(GeneratorClass c) {
  switch (c) {
    case GeneratorClass::TimeTranslate: return "time-translate";
    case GeneratorClass::TimeDilate: return "time-dilate";
    case GeneratorClass::WTime: return "w-time";
    case GeneratorClass::WTranslate: return "w-translate";
    case GeneratorClass::RightInvariant: return "right-invariant";
    case GeneratorClass::LeftInvariant: return "left-invariant";
    case GeneratorClass::RType: return "R-type";
    case GeneratorClass::PType: return "P-type";
  }
  return "?";
}

MatrixReport classify_matrix(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("classify_matrix: matrix must be square");
  MatrixReport r;
  r.n = a.rows();
  r.determinant = determinant(a);
  r.nonsingular = sgn(r.determinant) != 0;
  r.trace = a.trace();
  r.unimodular = sgn(r.trace) == 0;
  r.minimal_polynomial_degree = minimal_polynomial(a).size() - 1;
  r.derogatory = r.minimal_polynomial_degree < r.n;
  r.scalar_multiple_of_identity =
      r.n > 0 && sgn(a(0, 0)) != 0 && a == a(0, 0) * RatMatrix::identity(r.n);
  return r;
}

std::pair<std::size_t, std::size_t> dimension_bounds(std::size_t n) {
  return {3 * n + 4, n * n + 2 * n + 4};
}

std::vector<VectorField> SymmetrySolution::fields() const {
  std::vector<VectorField> out;
  for (const auto& g : generators) {
    if (!g.field) throw std::logic_error("solution has no closed-form fields");
    out.push_back(*g.field);
  }
  return out;
}

std::pair<RatMatrix, RatMatrix> structured_residuals(const SymmetryParameters& p, const RatMatrix& a) {
  return {a * p.p + p.p * a, p.r * a - a * p.r - p.h * a};
}

VectorField field_from_parameters(const SymmetryParameters& p, const ExprMatrix& e) {
  const std::size_t n = p.s.size();
  VectorField f(static_cast<int>(n));
  f.xi = ScalarExpr(p.l) * ScalarExpr::t() + ScalarExpr(p.k) + ScalarExpr(p.g) * ScalarExpr::w();
  f.etaw = ScalarExpr(p.h) * ScalarExpr::w() + ScalarExpr(p.j);
  // e^{wA} (P x + T), built as a vector of expressions first.
  std::vector<ScalarExpr> inner(n);
  for (std::size_t k = 0; k < n; ++k) {
    inner[k] = ScalarExpr(p.t[k]);
    for (std::size_t m = 0; m < n; ++m)
      if (sgn(p.p(k, m)) != 0) inner[k] += p.p(k, m) * ScalarExpr::x(static_cast<int>(m));
  }
  for (std::size_t i = 0; i < n; ++i) {
    ScalarExpr c(p.s[i]);
    for (std::size_t m = 0; m < n; ++m)
      if (sgn(p.r(i, m)) != 0) c += p.r(i, m) * ScalarExpr::x(static_cast<int>(m));
    for (std::size_t k = 0; k < n; ++k)
      if (!inner[k].is_zero()) c += e[i][k] * inner[k];
    f.eta[i] = std::move(c);
  }
  return f;
}

SymmetrySolution solve(const RatMatrix& a, const SolveOptions& opts) {
  if (!a.is_square()) throw InputError("solve: matrix must be square");
  SymmetrySolution sol;
  sol.n = a.rows();
  sol.a = a;
  sol.classification = classify_matrix(a);
  if (!sol.classification.nonsingular)
    throw SingularMatrixError(
        "A is singular (det A = 0); the closed-form symmetry classification requires a "
        "nonsingular matrix. Use 'verify' to check candidate fields directly.");
  sol.within_bound_hypotheses = !sol.classification.unimodular;
  sol.commutant = commutant_pairs(a);
  sol.anticommutant = anticommutant(a);
  const std::size_t n = sol.n;

  auto add = [&](GeneratorClass c, auto&& set) {
    SymmetryParameters p = SymmetryParameters::zero(n);
    set(p);
    sol.generators.push_back({c, std::move(p), std::nullopt});
  };
  add(GeneratorClass::TimeTranslate, [](auto& p) { p.k = 1; });
  add(GeneratorClass::TimeDilate, [](auto& p) { p.l = 1; });
  add(GeneratorClass::WTime, [](auto& p) { p.g = 1; });
  add(GeneratorClass::WTranslate, [](auto& p) { p.j = 1; });
  for (std::size_t i = 0; i < n; ++i) add(GeneratorClass::RightInvariant, [i](auto& p) { p.s[i] = 1; });
  for (std::size_t k = 0; k < n; ++k) add(GeneratorClass::LeftInvariant, [k](auto& p) { p.t[k] = 1; });
  for (std::size_t b = 0; b < sol.commutant.dimension; ++b)
    add(GeneratorClass::RType, [&](auto& p) {
      p.r = sol.commutant.basis[b];
      p.h = sol.commutant.h[b];
    });
  for (std::size_t b = 0; b < sol.anticommutant.dimension; ++b)
    add(GeneratorClass::PType, [&](auto& p) { p.p = sol.anticommutant.basis[b]; });
  sol.dimension = sol.generators.size();

  for (const auto& g : sol.generators) {
    const auto [anti, comm] = structured_residuals(g.params, a);
    if (!anti.is_zero() || !comm.is_zero())
      throw std::logic_error("solve: generator violates its algebraic condition");
  }

  sol.exp_wa = symbolic_exp(a);
  if (sol.exp_wa) {
    const auto sys = GeodesicSystem::codim_one(a);
    for (auto& g : sol.generators) {
      g.field = field_from_parameters(g.params, *sol.exp_wa);
      if (opts.verify_fields && !is_symmetry(*g.field, sys).is_symmetry)
        throw std::logic_error("solve: generator " + to_string(*g.field) +
                               " fails the determining equations");
    }
  }
  return sol;
}

SymmetryParameters bracket_parameters(const SymmetryParameters& x1, const SymmetryParameters& x2,
                                      const RatMatrix& a) {
  if (sgn(x1.h) != 0 || sgn(x2.h) != 0)
    throw std::logic_error("bracket_parameters: H must vanish");
  SymmetryParameters b = SymmetryParameters::zero(x1.s.size());
  b.k = x1.k * x2.l - x2.k * x1.l + x1.j * x2.g - x2.j * x1.g;
  b.g = x1.g * x2.l - x2.g * x1.l;
  b.r = x2.r * x1.r - x1.r * x2.r + x2.p * x1.p - x1.p * x2.p;
  const RatVector s1 = x2.r * x1.s, s2 = x1.r * x2.s, s3 = x2.p * x1.t, s4 = x1.p * x2.t;
  const RatVector t1 = x2.r * x1.t, t2 = x2.p * x1.s, t3 = a * x2.t, t4 = x1.r * x2.t,
                  t5 = x1.p * x2.s, t6 = a * x1.t;
  for (std::size_t i = 0; i < b.s.size(); ++i) {
    b.s[i] = s1[i] - s2[i] + s3[i] - s4[i];
    b.t[i] = t1[i] + t2[i] + x1.j * t3[i] - t4[i] - t5[i] - x2.j * t6[i];
  }
  b.p = x2.r * x1.p + x2.p * x1.r + x1.j * (a * x2.p) - x1.r * x2.p - x1.p * x2.r -
        x2.j * (a * x1.p);
  return b;
}

LieAlgebra structure_constants_of(const SymmetrySolution& sol) {
  const std::size_t d = sol.generators.size();
  const std::size_t width = 5 + 2 * sol.n + 2 * sol.n * sol.n;
  // Columns: generator parameter vectors, then every bracket.
  std::vector<RatVector> cols;
  for (const auto& g : sol.generators) cols.push_back(g.params.to_vector());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      cols.push_back(bracket_parameters(sol.generators[i].params, sol.generators[j].params, sol.a)
                         .to_vector());
      pairs.emplace_back(i, j);
    }
  RatMatrix m(width, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < width; ++r) m(r, c) = cols[c][r];
  const auto red = rref(m);
  if (red.rank != d) throw std::logic_error("structure_constants_of: bracket outside the generator span");
  for (std::size_t k = 0; k < d; ++k)
    if (red.pivots[k] != k) throw std::logic_error("structure_constants_of: dependent generators");
  LieAlgebra l(d);
  for (std::size_t b = 0; b < pairs.size(); ++b) {
    RatVector coeffs(d);
    for (std::size_t k = 0; k < d; ++k) coeffs[k] = red.reduced(k, d + b);
    l.set_bracket(pairs[b].first, pairs[b].second, coeffs);
  }
  return l;
}

AlgebraAnalysis analyze_symmetry_algebra(const LieAlgebra& l) {
  AlgebraAnalysis out;
  out.dim = l.dim();
  const auto series = derived_series(l);
  for (const auto& s : series) out.derived_series_dims.push_back(s.dim());
  out.solvable = series.back().dim() == 0;
  out.nilpotent = is_nilpotent(l);
  out.radical_dim = radical_via_killing(l).dim();
  out.levi_dim = out.dim - out.radical_dim;
  return out;
}

}  // namespace cansym
