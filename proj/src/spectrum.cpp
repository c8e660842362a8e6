#include "cansym/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace cansym {

namespace poly {

RatVector trim(RatVector p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

RatVector derivative(const RatVector& p) {
  RatVector d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  return trim(d);
}

std::pair<RatVector, RatVector> divide(const RatVector& num, const RatVector& den_in) {
  const RatVector den = trim(den_in);
  if (den.empty()) throw std::domain_error("polynomial division by zero");
  RatVector r = trim(num);
  if (r.size() < den.size()) return {{}, r};
  RatVector q(r.size() - den.size() + 1);
  while (!r.empty() && r.size() >= den.size()) {
    const std::size_t shift = r.size() - den.size();
    const Rational f = r.back() / den.back();
    q[shift] = f;
    for (std::size_t k = 0; k < den.size(); ++k) r[shift + k] -= f * den[k];
    r = trim(r);
  }
  return {trim(q), r};
}

RatVector gcd(RatVector a, RatVector b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    RatVector r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

Rational evaluate(const RatVector& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace poly

namespace {

// Coefficients whose magnitude exceeds this are not factored by trial
// division; such matrices fall back to the structured solver path.
const Integer kFactorLimit("1000000000000", 10);

std::optional<std::vector<Integer>> positive_divisors(Integer v) {
  if (v < 0) v = -v;
  if (v == 0 || v > kFactorLimit) return std::nullopt;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Integer polynomial with the same roots.
std::vector<Integer> clear_denominators(const RatVector& p) {
  Integer l = 1;
  for (const auto& c : p) l = lcm(l, Integer(c.get_den()));
  std::vector<Integer> out;
  for (const auto& c : p) {
    Rational scaled = c * l;
    out.push_back(Integer(scaled.get_num()));
  }
  return out;
}

struct Complex {
  Rational re, im;
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

// Atom w^j e^{rho w} trig(sigma w) and its k-th derivative at zero.
struct BasisFunction {
  int power;
  Rational rho, sigma;
  Trig trig;

  Rational derivative_at_zero(int k) const {
    if (k < power) return 0;
    // k!/(k-j)! mu^{k-j}, mu = rho + i sigma; real or imaginary part.
    Rational falling = 1;
    for (int i = 0; i < power; ++i) falling *= (k - i);
    Complex mu_pow{1, 0};
    const Complex mu{rho, trig == Trig::None ? Rational(0) : sigma};
    for (int i = 0; i < k - power; ++i) mu_pow = mu_pow * mu;
    return falling * (trig == Trig::Sin ? mu_pow.im : mu_pow.re);
  }

  ScalarExpr expr() const {
    ScalarExpr e = ScalarExpr::w().pow(power) * ScalarExpr::exp_w(rho);
    if (trig == Trig::Sin) e = e * ScalarExpr::sin_w(sigma);
    if (trig == Trig::Cos) e = e * ScalarExpr::cos_w(sigma);
    return e;
  }
};

}  // namespace

std::optional<RationalSpectrum> rational_spectrum(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("rational_spectrum: matrix must be square");
  RationalSpectrum spec;
  RatVector p = characteristic_polynomial(a);

  // Zero roots.
  int zeros = 0;
  while (p.size() > 1 && sgn(p[0]) == 0) {
    p.erase(p.begin());
    ++zeros;
  }
  if (zeros) spec.real.push_back({Rational(0), zeros});

  if (p.size() > 1) {
    const auto ip = clear_denominators(p);
    const auto num_divs = positive_divisors(ip.front());
    const auto den_divs = positive_divisors(ip.back());
    if (!num_divs || !den_divs) return std::nullopt;
    std::vector<Rational> candidates;
    for (const auto& d1 : *num_divs)
      for (const auto& d2 : *den_divs) {
        Rational r(d1, d2);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      int mult = 0;
      while (p.size() > 1 && sgn(poly::evaluate(p, r)) == 0) {
        p = poly::divide(p, {-r, 1}).first;
        ++mult;
      }
      if (mult) spec.real.push_back({r, mult});
    }
  }

  // What is left has no rational roots. Square-free decomposition (Yun).
  if (p.size() > 1) {
    RatVector f = p;
    RatVector g = poly::gcd(f, poly::derivative(f));
    RatVector c = poly::divide(f, g).first;
    RatVector d = poly::divide(poly::derivative(f), g).first;
    d = poly::trim(d);
    int mult = 1;
    while (poly::trim(c).size() > 1) {
      RatVector cprime = poly::derivative(c);
      RatVector y(std::max(d.size(), cprime.size()));
      for (std::size_t k = 0; k < d.size(); ++k) y[k] += d[k];
      for (std::size_t k = 0; k < cprime.size(); ++k) y[k] -= cprime[k];
      y = poly::trim(y);
      RatVector factor = y.empty() ? c : poly::gcd(c, y);
      if (factor.size() > 1) {
        if (factor.size() != 3) return std::nullopt;
        // Monic x^2 + b x + c0 with b^2 < 4 c0 and rational imaginary part.
        const Rational b = factor[1] / factor[2], c0 = factor[0] / factor[2];
        const Rational rho = -b / 2;
        const Rational sigma2 = c0 - rho * rho;
        if (sgn(sigma2) <= 0) return std::nullopt;
        Integer num_root = sqrt(Integer(sigma2.get_num()));
        Integer den_root = sqrt(Integer(sigma2.get_den()));
        if (num_root * num_root != sigma2.get_num() || den_root * den_root != sigma2.get_den())
          return std::nullopt;
        Rational sigma(num_root, den_root);
        sigma.canonicalize();
        spec.complex.push_back({rho, sigma, mult});
      }
      c = poly::divide(c, factor).first;
      d = y.empty() ? RatVector{} : poly::divide(y, factor).first;
      ++mult;
    }
  }
  return spec;
}

std::optional<ExprMatrix> symbolic_exp(const RatMatrix& a) {
  const auto spec = rational_spectrum(a);
  if (!spec) return std::nullopt;
  const std::size_t n = a.rows();
  std::vector<BasisFunction> basis;
  for (const auto& r : spec->real)
    for (int j = 0; j < r.multiplicity; ++j) basis.push_back({j, r.value, 0, Trig::None});
  for (const auto& c : spec->complex)
    for (int j = 0; j < c.multiplicity; ++j) {
      basis.push_back({j, c.rho, c.sigma, Trig::Cos});
      basis.push_back({j, c.rho, c.sigma, Trig::Sin});
    }
  if (basis.size() != n) throw std::logic_error("symbolic_exp: spectrum size mismatch");

  // W(k, b) = k-th derivative of basis function b at 0; sum_b W(k,b) C_b = A^k.
  RatMatrix wronskian(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t b = 0; b < n; ++b)
      wronskian(k, b) = basis[b].derivative_at_zero(static_cast<int>(k));

  std::vector<RatMatrix> powers{RatMatrix::identity(n)};
  for (std::size_t k = 1; k < n; ++k) powers.push_back(powers.back() * a);

  ExprMatrix e(n, std::vector<ScalarExpr>(n));
  std::vector<ScalarExpr> funcs;
  for (const auto& b : basis) funcs.push_back(b.expr());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatVector rhs(n);
      for (std::size_t k = 0; k < n; ++k) rhs[k] = powers[k](i, j);
      const auto coeffs = solve_linear(wronskian, rhs);
      if (!coeffs) throw std::logic_error("symbolic_exp: singular Wronskian");
      for (std::size_t b = 0; b < n; ++b)
        if (sgn((*coeffs)[b]) != 0) e[i][j] += (*coeffs)[b] * funcs[b];
    }

  // Self-check: E' = A E, E(0) = I.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ScalarExpr rhs;
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(a(i, k)) != 0) rhs += a(i, k) * e[k][j];
      if (!(e[i][j].differentiate(Var::w()) == rhs))
        throw std::logic_error("symbolic_exp: derivative check failed");
      const double at0 = e[i][j].evaluate(EvalPoint{0, 0, {}});
      if (std::abs(at0 - (i == j ? 1.0 : 0.0)) > 1e-12)
        throw std::logic_error("symbolic_exp: initial value check failed");
    }
  return e;
}

}  // namespace cansym
