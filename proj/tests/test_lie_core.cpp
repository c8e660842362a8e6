#include <doctest.h>

#include "cansym/json_io.hpp"
#include "cansym/lie_algebra.hpp"
#include "oracles.hpp"

using namespace cansym;

namespace {
Rational q(long n, long d = 1) { return make_rational(n, d); }

RatVector unit(std::size_t d, std::size_t i) {
  RatVector v(d);
  v[i] = 1;
  return v;
}
}  // namespace

TEST_CASE("codim-one constructor") {
  const auto one = codim1_algebra(RatMatrix{{2}});
  CHECK(one.algebra.dim() == 2);
  CHECK(one.algebra.bracket_basis(0, 1) == RatVector{q(2), q(0)});
  CHECK(one.algebra.bracket_basis(1, 0) == RatVector{q(-2), q(0)});
  CHECK(validate_jacobi(one.algebra).ok);

  // A = I3: [e_i, e4] = e_i, the A4.5(1,1) algebra.
  const auto id = codim1_algebra(RatMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(id.algebra.bracket_basis(i, 3) == unit(4, i));
  CHECK(id.nonsingular);
  CHECK(id.trace == 3);
  CHECK_FALSE(id.unimodular);

  // Passing the transposed display matrix gives [e2, e4] = e2 + e3.
  const RatMatrix display{{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
  const auto a42 = codim1_algebra(display.transpose());
  CHECK(a42.algebra.bracket_basis(1, 3) == RatVector{q(0), q(1), q(1), q(0)});
  CHECK(a42.algebra.bracket_basis(2, 3) == RatVector{q(0), q(0), q(1), q(0)});
  CHECK(a42.algebra.bracket_basis(0, 3) == RatVector{q(1), q(0), q(0), q(0)});

  // Only brackets with the last element are nonzero.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 4; ++k) CHECK(is_zero(a42.algebra.c(i, j, k)));

  CHECK(codim1_algebra(RatMatrix{{1, 0}, {0, -1}}).unimodular);
}

TEST_CASE("Jacobi validation") {
  CHECK(validate_jacobi(LieAlgebra::abelian(4)).ok);
  CHECK(validate_jacobi(LieAlgebra::heisenberg()).ok);

  // Raw tensor C^3_12 = C^2_13 = 1 without the mirrored entries.
  LieAlgebra raw(3);
  raw.set_constant(0, 1, 2, 1);
  raw.set_constant(0, 2, 1, 1);
  const auto rep = validate_jacobi(raw);
  CHECK_FALSE(rep.ok);
  CHECK(rep.antisymmetry_violation);
  REQUIRE(rep.violation);

  // Antisymmetrized, the same two brackets define a Lie algebra.
  LieAlgebra fixed(3);
  fixed.set_bracket(0, 1, unit(3, 2));
  fixed.set_bracket(0, 2, unit(3, 1));
  CHECK(validate_jacobi(fixed).ok);

  // [e1,e2] = e3, [e2,e3] = e2 breaks Jacobi on (1,2,3).
  LieAlgebra bad(3);
  bad.set_bracket(0, 1, unit(3, 2));
  bad.set_bracket(1, 2, unit(3, 1));
  const auto rb = validate_jacobi(bad);
  CHECK_FALSE(rb.ok);
  CHECK_FALSE(rb.antisymmetry_violation);
  REQUIRE(rb.violation);
  CHECK(*rb.violation == std::array<std::size_t, 3>{0, 1, 2});
}

TEST_CASE("curvature and flatness") {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        for (const auto& v : curvature(LieAlgebra::abelian(3), i, j, k)) CHECK(is_zero(v));
        for (const auto& v : curvature(LieAlgebra::heisenberg(), i, j, k)) CHECK(is_zero(v));
      }
  // A = [1]: [e1, e2] = e1, so 1/4 [[e1, e2], e2] = 1/4 e1.
  const auto l1 = codim1_algebra(RatMatrix{{1}}).algebra;
  CHECK(curvature(l1, 0, 1, 1) == RatVector{q(1, 4), q(0)});
  CHECK(curvature(l1, 1, 0, 1) == RatVector{q(-1, 4), q(0)});
  CHECK_THROWS(curvature(l1, 0, 1, 2));

  CHECK(is_flat(LieAlgebra::heisenberg()));
  CHECK(is_flat(LieAlgebra::abelian(2)));
  CHECK_FALSE(is_flat(codim1_algebra(RatMatrix::identity(3)).algebra));
  CHECK(is_flat(codim1_algebra(RatMatrix{{0, 1}, {0, 0}}).algebra));
}

TEST_CASE("flat iff A^2 = 0 within the codim-one class") {
  std::mt19937_64 rng(99);
  int flat_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    RatMatrix a = oracle::random_matrix(rng, n, 2, 1);
    if (trial % 3 == 0) {
      // Force A^2 = 0 with a rank-one u v^T, v.u = 0.
      RatVector u(n), v(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = oracle::random_rational(rng, 2, 1);
      v[0] = u[1];
      v[1] = -u[0];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = u[i] * v[j];
    }
    const bool sq_zero = (a * a).is_zero();
    flat_seen += sq_zero;
    CHECK(is_flat(codim1_algebra(a).algebra) == sq_zero);
  }
  CHECK(flat_seen > 0);
}

TEST_CASE("Ricci is a quarter of the Killing form") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const LieAlgebra l = oracle::random_lie_algebra(rng, trial % 3);
    REQUIRE(validate_jacobi(l).ok);
    const auto r = ricci(l);
    CHECK(r.is_symmetric());
    CHECK(r.entries == q(1, 4) * killing_form(l).entries);
  }
  const RatMatrix a{{1, 2, 0}, {0, 3, 1}, {1, 0, -1}};
  const auto r = ricci(codim1_algebra(a).algebra);
  RatMatrix expected(4, 4);
  expected(3, 3) = (a * a).trace() / 4;
  CHECK(r.entries == expected);
  CHECK(ricci(LieAlgebra::abelian(3)).entries.is_zero());
  CHECK(killing_form(LieAlgebra::abelian(3)).entries.is_zero());
}

TEST_CASE("derived series, center, one-forms") {
  const RatMatrix a{{1, 1}, {0, 2}};
  const auto l = codim1_algebra(a).algebra;
  CHECK(derived_algebra(l) == span_of({unit(3, 0), unit(3, 1)}, 3));
  CHECK(center(l).dim() == 0);
  const auto forms = biinvariant_oneforms(l);
  REQUIRE(forms.size() == 1);
  CHECK(forms[0] == unit(3, 2));
  CHECK(is_solvable(l));
  CHECK_FALSE(is_nilpotent(l));

  const auto h = LieAlgebra::heisenberg();
  CHECK(center(h) == span_of({unit(3, 2)}, 3));
  CHECK(is_nilpotent(h));
  CHECK(biinvariant_oneforms(h).size() == 2);
  CHECK(biinvariant_oneforms(LieAlgebra::abelian(4)).size() == 4);
  CHECK(derived_algebra(LieAlgebra::abelian(4)).dim() == 0);
  CHECK(center(LieAlgebra::abelian(4)).dim() == 4);

  const auto s = LieAlgebra::sl2();
  CHECK(is_semisimple(s));
  CHECK(radical_via_killing(s).dim() == 0);
  CHECK_FALSE(is_solvable(s));
  CHECK(radical_via_killing(l).dim() == 3);
  CHECK(radical_via_killing(LieAlgebra::abelian(2)).dim() == 2);
}

TEST_CASE("codim-one invariants on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    RatMatrix a = oracle::random_matrix(rng, n, 1, 1);
    if (a.is_zero()) a(0, 0) = 1;
    const auto l = codim1_algebra(a).algebra;
    CHECK(derived_algebra(l).dim() == rank(a));
    CHECK(center(l).dim() == n - rank(a));
    for (const auto& f : biinvariant_oneforms(l))
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
          Rational s = 0;
          for (std::size_t k = 0; k <= n; ++k) s += f[k] * l.c(i, j, k);
          CHECK(is_zero(s));
        }
    // Central vectors have vanishing brackets, hence vanishing connection terms.
    for (const auto& z : center(l).basis)
      for (std::size_t m = 0; m <= n; ++m)
        for (const auto& v : l.bracket(z, unit(n + 1, m))) CHECK(is_zero(v));
  }
}

TEST_CASE("nilpotent ideal verification") {
  CHECK(verify_nilpotent_ideal(LieAlgebra::heisenberg(), {unit(3, 0), unit(3, 1), unit(3, 2)}));
  const auto l = codim1_algebra(RatMatrix{{1, 0}, {1, 2}}).algebra;
  CHECK(verify_nilpotent_ideal(l, {unit(3, 0), unit(3, 1)}));
  CHECK_FALSE(verify_nilpotent_ideal(l, {unit(3, 0), unit(3, 1), unit(3, 2)}));
  // span{e3} is a subalgebra but not an ideal.
  CHECK_FALSE(verify_nilpotent_ideal(l, {unit(3, 2)}));
  CHECK(is_ideal(l, span_of({unit(3, 0), unit(3, 1)}, 3)));
  CHECK(is_subalgebra(l, span_of({unit(3, 2)}, 3)));
}

TEST_CASE("Lie algebra JSON round trip") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const LieAlgebra l = oracle::random_lie_algebra(rng, trial % 3);
    const Json j = to_json(l);
    for (const auto& b : j.at("brackets")) CHECK(b.at("i").get<int>() < b.at("j").get<int>());
    CHECK(lie_algebra_from_json(nlohmann::json::parse(j.dump())) == l);
  }
  const Json h = to_json(LieAlgebra::heisenberg());
  CHECK(h.dump() == R"({"dim":3,"brackets":[{"i":1,"j":2,"coeffs":["0","0","1"]}]})");
}
