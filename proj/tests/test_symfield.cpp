#include <doctest.h>

#include <cmath>
#include <map>

#include "cansym/determining.hpp"
#include "cansym/field_span.hpp"
#include "cansym/numeric_residual.hpp"
#include "cansym/spectrum.hpp"
#include "cansym/vector_field.hpp"
#include "oracles.hpp"

using namespace cansym;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

VectorField field(const std::string& text, int n = 3) { return parse_field(text, n); }

ScalarExpr random_expr(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pw(0, 2), kind(0, 3), terms(1, 3), var(0, n - 1);
  ScalarExpr e;
  const int count = terms(rng);
  for (int k = 0; k < count; ++k) {
    ScalarExpr term(oracle::random_rational(rng, 3, 2));
    term = term * ScalarExpr::t().pow(pw(rng)) * ScalarExpr::w().pow(pw(rng)) *
           ScalarExpr::x(var(rng)).pow(pw(rng));
    const Rational rate = oracle::random_rational(rng, 2, 1);
    switch (kind(rng)) {
      case 1: term = term * ScalarExpr::exp_w(rate); break;
      case 2: term = term * ScalarExpr::sin_w(abs(rate) + 1); break;
      case 3: term = term * ScalarExpr::cos_w(abs(rate) + 1); break;
      default: break;
    }
    e += term;
  }
  return e;
}

VectorField random_field(std::mt19937_64& rng, int n) {
  VectorField x(n);
  std::bernoulli_distribution keep(0.5);
  if (keep(rng)) x.xi = random_expr(rng, n);
  for (int i = 0; i < n; ++i)
    if (keep(rng)) x.eta[static_cast<std::size_t>(i)] = random_expr(rng, n);
  if (keep(rng)) x.etaw = random_expr(rng, n);
  return x;
}

/// Rank over Q of scalar expressions, coordinates over their atoms.
std::size_t expr_rank(const std::vector<ScalarExpr>& exprs) {
  std::map<Atom, std::size_t> index;
  for (const auto& e : exprs)
    for (const auto& [atom, c] : e.terms()) index.emplace(atom, index.size());
  oracle::Grid g;
  for (const auto& e : exprs) {
    std::vector<Rational> row(index.size());
    for (const auto& [atom, c] : e.terms()) row[index.at(atom)] = c;
    g.push_back(row);
  }
  return oracle::rank_of(g);
}

std::vector<ScalarExpr> exprs_of(const std::vector<Residual>& rs) {
  std::vector<ScalarExpr> out;
  for (const auto& r : rs) out.push_back(r.expr);
  return out;
}

bool all_zero(const std::vector<Residual>& rs) {
  for (const auto& r : rs)
    if (!r.expr.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("differentiation examples") {
  const ScalarExpr e2w = ScalarExpr::exp_w(2);
  CHECK(e2w.differentiate(Var::w()) == q(2) * e2w);
  const ScalarExpr wsin = ScalarExpr::w() * ScalarExpr::sin_w(1);
  CHECK(wsin.differentiate(Var::w()) == ScalarExpr::sin_w(1) + ScalarExpr::w() * ScalarExpr::cos_w(1));
  const ScalarExpr t2x = ScalarExpr::t().pow(2) * ScalarExpr::x(0);
  CHECK(t2x.differentiate(Var::t()) == q(2) * ScalarExpr::t() * ScalarExpr::x(0));
  CHECK(ScalarExpr::cos_w(3).differentiate(Var::w()) == q(-3) * ScalarExpr::sin_w(3));
  CHECK(ScalarExpr::x(1).differentiate(Var::x(0)).is_zero());
}

TEST_CASE("trigonometric products canonicalize") {
  const ScalarExpr s = ScalarExpr::sin_w(1), c = ScalarExpr::cos_w(1);
  CHECK((s * s + c * c - ScalarExpr(1)).is_zero());
  CHECK((q(2) * s * c - ScalarExpr::sin_w(2)).is_zero());
  CHECK((ScalarExpr::exp_w(1) * ScalarExpr::exp_w(-1) - ScalarExpr(1)).is_zero());
  CHECK(ScalarExpr::sin_w(-2) == -ScalarExpr::sin_w(2));
  CHECK(ScalarExpr::cos_w(-2) == ScalarExpr::cos_w(2));
}

TEST_CASE("symbolic zero test agrees with evaluation") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> box(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const ScalarExpr a = random_expr(rng, 2), b = random_expr(rng, 2);
    // (a + b)^2 - a^2 - 2ab - b^2 is identically zero.
    const ScalarExpr zero = (a + b) * (a + b) - a * a - q(2) * a * b - b * b;
    const ScalarExpr nonzero = a * b + ScalarExpr(1);
    CHECK(zero.is_zero());
    double max_zero = 0, max_nonzero = 0;
    for (int p = 0; p < 20; ++p) {
      const EvalPoint pt{box(rng), box(rng), {box(rng), box(rng)}};
      max_zero = std::max(max_zero, std::abs(zero.evaluate(pt)));
      max_nonzero = std::max(max_nonzero, std::abs(nonzero.evaluate(pt)));
    }
    CHECK(max_zero < 1e-6 * (1 + std::abs(a.evaluate({1, 1, {1, 1}})) + std::abs(b.evaluate({1, 1, {1, 1}}))));
    if (!nonzero.is_zero()) CHECK(max_nonzero > 0);
  }
}

TEST_CASE("lie bracket examples and identities") {
  CHECK(lie_bracket(field("Dw"), field("exp(w)*Dx")) == field("exp(w)*Dx"));
  CHECK(lie_bracket(field("x*Dx"), field("Dx")) == field("-Dx"));
  CHECK(lie_bracket(field("t*Dt"), field("Dt")) == field("-Dt"));
  CHECK_THROWS(lie_bracket(field("Dx", 2), field("Dx", 3)));

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    const VectorField x = random_field(rng, 2), y = random_field(rng, 2), z = random_field(rng, 2);
    CHECK((lie_bracket(x, y) + lie_bracket(y, x)).is_zero());
    const VectorField jac = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                            lie_bracket(z, lie_bracket(x, y));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("field parser and canonical text round trip") {
  const VectorField x = field("x*exp(w)*Dy + sin(w)*Dx");
  CHECK(x.eta[1] == ScalarExpr::x(0) * ScalarExpr::exp_w(1));
  CHECK(x.eta[0] == ScalarExpr::sin_w(1));
  CHECK(field("D_z") == field("Dz"));
  CHECK(field("(2*t*Dt - y*Dy)/3") == field("2/3*t*Dt - 1/3*y*Dy"));
  CHECK(parse_field("exp(a*w)*Dx", 3, true, {{"a", q(2)}}) == field("exp(2*w)*Dx"));
  CHECK(parse_field("Dx1 + x4*Dx4", 4) == VectorField::d_x(4, 0) + ScalarExpr::x(3) * VectorField::d_x(4, 3));
  CHECK(to_string(VectorField(3)) == "0");

  CHECK_THROWS_AS(field("z"), InputError);            // scalar, not a field
  CHECK_THROWS_AS(field("Dx*Dy"), InputError);        // product of fields
  CHECK_THROWS_AS(field("exp(x)*Dx"), InputError);    // exp needs c*w
  CHECK_THROWS_AS(field("Dx/x"), InputError);         // non-constant division
  CHECK_THROWS_AS(field("Dq"), InputError);           // unknown operator
  CHECK_THROWS_AS(field("exp(a*w)*Dx"), InputError);  // unbound parameter
  CHECK_THROWS_AS(field("Dx +"), InputError);
  CHECK_THROWS_AS(parse_field("Dw", 2, false), InputError);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const VectorField f = random_field(rng, n);
    CHECK(parse_field(to_string(f), n) == f);
  }
}

TEST_CASE("prolongation examples") {
  const auto sys = GeodesicSystem::codim_one(RatMatrix{{1, 0}, {0, 2}});
  const int nv = sys.dim();
  for (const auto& p : prolong(field("Dt", 2), sys)) CHECK(p.is_zero());
  const auto pt = prolong(field("t*Dt", 2), sys);
  for (int a = 0; a < nv; ++a)
    CHECK(pt[static_cast<std::size_t>(a)] == ScalarExpr(-1) * VelocityPoly::velocity(nv, a));
  const auto px = prolong(field("x*Dx", 2), sys);
  CHECK(px[0] == VelocityPoly::velocity(nv, 0));
  CHECK(px[1].is_zero());
  CHECK(px[2].is_zero());
}

TEST_CASE("connection reproduces the geodesic equations") {
  const RatMatrix a{{1, 2}, {3, 4}};
  const auto sys = GeodesicSystem::codim_one(a);
  // f^i = -Gamma^i_{bc} v^b v^c must equal (A u)^i q.
  for (int i = 0; i < 2; ++i)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        Rational expected = 0;
        if (b == 2 && c < 2) expected = -a(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) / 2;
        if (c == 2 && b < 2) expected = -a(static_cast<std::size_t>(i), static_cast<std::size_t>(b)) / 2;
        CHECK(sys.gamma(i, b, c) == expected);
      }
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) CHECK(is_zero(sys.gamma(2, b, c)));
}

TEST_CASE("classical symmetries on every codim-one system") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 3;
    // Triangular with integer diagonal keeps e^{wA} in closed form.
    RatMatrix a = oracle::random_matrix(rng, static_cast<std::size_t>(n), 2, 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 0;
    const auto sys = GeodesicSystem::codim_one(a);
    std::vector<VectorField> fields{field("Dt", n), field("t*Dt", n), field("w*Dt", n), field("Dw", n)};
    VectorField dil(n), right = VectorField::d_w(n);
    for (int i = 0; i < n; ++i) {
      fields.push_back(VectorField::d_x(n, i));
      dil.eta[static_cast<std::size_t>(i)] = ScalarExpr::x(i);
      for (int j = 0; j < n; ++j)
        right.eta[static_cast<std::size_t>(i)] +=
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * ScalarExpr::x(j);
    }
    fields.push_back(dil);
    fields.push_back(right);
    const auto e = symbolic_exp(a);
    REQUIRE(e);
    for (int k = 0; k < n; ++k) {
      VectorField left(n);
      for (int i = 0; i < n; ++i) left.eta[static_cast<std::size_t>(i)] = (*e)[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      fields.push_back(left);
    }
    for (const auto& f : fields) {
      CHECK(all_zero(determining_residuals(f, sys)));
      CHECK(all_zero(spray_residuals(f, sys)));
      CHECK(is_symmetry(f, sys).is_symmetry);
    }
  }
}

TEST_CASE("lambda is minus the total derivative of xi") {
  const auto sys = GeodesicSystem::codim_one(RatMatrix{{1, 0}, {0, 1}});
  const auto v = is_symmetry(field("t*Dt", 2), sys);
  CHECK(v.is_symmetry);
  CHECK(v.lambda == VelocityPoly::constant(3, ScalarExpr(-1)));
  const auto wt = is_symmetry(field("w*Dt", 2), sys);
  CHECK(wt.is_symmetry);
  CHECK(wt.lambda == ScalarExpr(-1) * VelocityPoly::velocity(3, 2));
}

TEST_CASE("non-symmetry is rejected exactly and numerically") {
  const auto sys = GeodesicSystem::codim_one(RatMatrix{{2, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  const VectorField x = field("x*exp(w)*Dy");
  const auto v = is_symmetry(x, sys);
  CHECK_FALSE(v.is_symmetry);
  CHECK_FALSE(v.failing.empty());
  CHECK(numeric_residual(x, sys) > 1e-3);
  CHECK(numeric_residual(field("Dt"), sys) == 0.0);
}

TEST_CASE("both residual routes span the same space") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 3;
    const RatMatrix a = oracle::random_matrix(rng, static_cast<std::size_t>(n), 2, 1);
    const auto sys = GeodesicSystem::codim_one(a);
    const VectorField x = random_field(rng, n);
    const auto direct = exprs_of(determining_residuals(x, sys));
    const auto spray = exprs_of(spray_residuals(x, sys));
    std::vector<ScalarExpr> both = direct;
    both.insert(both.end(), spray.begin(), spray.end());
    const std::size_t rd = expr_rank(direct), rs = expr_rank(spray), rb = expr_rank(both);
    CHECK(rd == rs);
    CHECK(rb == rd);
  }
}

TEST_CASE("free particle in two dimensions has 15 symmetries") {
  const auto sys = GeodesicSystem::free_particle(2);
  const std::vector<std::string> texts{
      "Dt", "Dx1", "Dx2", "t*Dt", "x1*Dt", "x2*Dt", "t*Dx1", "t*Dx2",
      "x1*Dx1", "x1*Dx2", "x2*Dx1", "x2*Dx2",
      "t*(t*Dt + x1*Dx1 + x2*Dx2)", "x1*(t*Dt + x1*Dx1 + x2*Dx2)", "x2*(t*Dt + x1*Dx1 + x2*Dx2)"};
  std::vector<VectorField> fields;
  for (const auto& t : texts) {
    fields.push_back(parse_field(t, 2, false));
    CHECK(is_symmetry(fields.back(), sys).is_symmetry);
  }
  CHECK(field_rank(fields) == 15u);
  CHECK(fields.size() == (2u + 3) * (2 + 1));
  // x1^2 Dx1 is not a symmetry of x'' = 0.
  CHECK_FALSE(is_symmetry(parse_field("x1^2*Dx1", 2, false), sys).is_symmetry);
}

TEST_CASE("parallel kernels match their serial references") {
  const auto sys = GeodesicSystem::codim_one(RatMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const VectorField x = random_field(rng, 3);
    CHECK(numeric_residual(x, sys, 40, 9) == numeric_residual_serial(x, sys, 40, 9));
  }
  std::vector<ScalarExpr> exprs;
  for (int k = 0; k < 6; ++k) exprs.push_back(random_expr(rng, 3));
  const auto pts = sample_points(sys, 64, 3);
  CHECK(evaluate_batch(exprs, pts) == evaluate_batch_serial(exprs, pts));
  CHECK(sample_points(sys, 10, 42).size() == 10);
  CHECK(sample_points(sys, 10, 42)[3].x == sample_points(sys, 10, 42)[3].x);
}

TEST_CASE("symbolic exponential") {
  const std::vector<RatMatrix> cases{
      RatMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, RatMatrix{{0, 1}, {-1, 0}},
      RatMatrix{{q(1, 2), 1, 0}, {-1, q(1, 2), 0}, {0, 0, 3}}, RatMatrix{{2, 0}, {0, -3}},
      RatMatrix{{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}, RatMatrix{{0, 1}, {-4, 0}}};
  for (const auto& a : cases) {
    const auto e = symbolic_exp(a);
    REQUIRE(e);
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        ScalarExpr rhs;
        for (std::size_t k = 0; k < n; ++k) rhs += a(i, k) * (*e)[k][j];
        CHECK((*e)[i][j].differentiate(Var::w()) == rhs);
        CHECK((*e)[i][j].evaluate({0, 0, {}}) == doctest::Approx(i == j ? 1.0 : 0.0));
      }
  }
  // Eigenvalues +-sqrt(2) are outside the rational class.
  CHECK_FALSE(rational_spectrum(RatMatrix{{0, 2}, {1, 0}}));
  CHECK_FALSE(symbolic_exp(RatMatrix{{0, 2}, {1, 0}}));
  const auto spec = rational_spectrum(RatMatrix{{1, 1}, {0, 1}});
  REQUIRE(spec);
  REQUIRE(spec->real.size() == 1);
  CHECK(spec->real[0].multiplicity == 2);
}

TEST_CASE("span helpers") {
  const std::vector<VectorField> basis{field("Dx"), field("exp(w)*Dy")};
  const auto c = express_in_span(basis, field("3*Dx - exp(w)*Dy"));
  REQUIRE(c);
  CHECK(*c == RatVector{q(3), q(-1)});
  CHECK_FALSE(express_in_span(basis, field("Dz")));
  const auto l = structure_constants_from_fields({field("Dt"), field("t*Dt")});
  REQUIRE(l);
  CHECK(l->bracket_basis(0, 1) == RatVector{q(1), q(0)});
  CHECK_FALSE(structure_constants_from_fields({field("Dt"), field("t^2*Dt")}));
}
