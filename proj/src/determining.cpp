#include "cansym/determining.hpp"

#include <functional>

namespace cansym {

// ---------------------------------------------------------------- system

GeodesicSystem::GeodesicSystem(int n, bool has_w) : n_(n), has_w_(has_w) {
  if (n < 0) throw InputError("negative system dimension");
  for (int i = 0; i < n; ++i) coords_.push_back(Var::x(i));
  if (has_w) coords_.push_back(Var::w());
  const auto d = static_cast<std::size_t>(dim());
  gamma_.assign(d * d * d, Rational(0));
}

Rational& GeodesicSystem::gamma_ref(int a, int b, int c) {
  const auto d = static_cast<std::size_t>(dim());
  return gamma_[(static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b)) * d +
                static_cast<std::size_t>(c)];
}

const Rational& GeodesicSystem::gamma(int a, int b, int c) const {
  return const_cast<GeodesicSystem*>(this)->gamma_ref(a, b, c);
}

GeodesicSystem GeodesicSystem::codim_one(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("codim_one system: matrix must be square");
  const int n = static_cast<int>(a.rows());
  GeodesicSystem s(n, true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational g = -a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) / 2;
      s.gamma_ref(i, j, n) = g;
      s.gamma_ref(i, n, j) = g;
    }
  s.a_ = a;
  return s;
}

GeodesicSystem GeodesicSystem::free_particle(int n) { return GeodesicSystem(n, false); }

// ---------------------------------------------------------------- polys

VelocityPoly VelocityPoly::constant(int nvars, const ScalarExpr& c) {
  VelocityPoly p(nvars);
  p.add(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

VelocityPoly VelocityPoly::velocity(int nvars, int b) {
  VelocityPoly p(nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(b)] = 1;
  p.add(m, ScalarExpr(1));
  return p;
}

ScalarExpr VelocityPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ScalarExpr() : it->second;
}

void VelocityPoly::add(const Monomial& m, const ScalarExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

VelocityPoly& VelocityPoly::operator+=(const VelocityPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

VelocityPoly& VelocityPoly::operator-=(const VelocityPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

VelocityPoly operator*(const VelocityPoly& a, const VelocityPoly& b) {
  VelocityPoly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      VelocityPoly::Monomial m(ma);
      for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
      out.add(m, ca * cb);
    }
  return out;
}

VelocityPoly operator*(const ScalarExpr& s, const VelocityPoly& p) {
  VelocityPoly out(p.nvars_);
  for (const auto& [m, c] : p.terms_) out.add(m, s * c);
  return out;
}

VelocityPoly VelocityPoly::differentiate(Var v) const {
  VelocityPoly out(nvars_);
  for (const auto& [m, c] : terms_) out.add(m, c.differentiate(v));
  return out;
}

VelocityPoly VelocityPoly::d_velocity(int b) const {
  VelocityPoly out(nvars_);
  const auto k = static_cast<std::size_t>(b);
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial d(m);
    --d[k];
    out.add(d, Rational(m[k]) * c);
  }
  return out;
}

namespace {

std::string monomial_string(const VelocityPoly::Monomial& m,
                            const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[k];
    if (m[k] > 1) s += "^" + std::to_string(m[k]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::string VelocityPoly::to_string(int n, const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    const std::string mono = monomial_string(m, names);
    out += "(" + c.to_string(n) + ")";
    if (mono != "1") out += "*" + mono;
  }
  return out;
}

std::vector<std::string> velocity_names(const GeodesicSystem& s) {
  std::vector<std::string> names;
  for (int i = 0; i < s.n(); ++i) names.push_back("u" + std::to_string(i + 1));
  if (s.has_w()) names.push_back("q");
  return names;
}

// ---------------------------------------------------------------- spray route

namespace {

struct Spray {
  const GeodesicSystem& sys;
  int nv;
  std::vector<VelocityPoly> f;  // f^a = -Gamma^a_{bc} v^b v^c

  explicit Spray(const GeodesicSystem& s) : sys(s), nv(s.dim()) {
    for (int a = 0; a < nv; ++a) {
      VelocityPoly fa(nv);
      for (int b = 0; b < nv; ++b)
        for (int c = 0; c < nv; ++c) {
          const Rational& g = s.gamma(a, b, c);
          if (sgn(g) == 0) continue;
          VelocityPoly::Monomial m(static_cast<std::size_t>(nv), 0);
          ++m[static_cast<std::size_t>(b)];
          ++m[static_cast<std::size_t>(c)];
          fa.add(m, ScalarExpr(Rational(-g)));
        }
      f.push_back(std::move(fa));
    }
  }

  // D F = F_t + v^b F_{y^b} + f^b F_{v^b}.
  VelocityPoly total_derivative(const VelocityPoly& p) const {
    VelocityPoly out = p.differentiate(Var::t());
    for (int b = 0; b < nv; ++b) {
      out += VelocityPoly::velocity(nv, b) * p.differentiate(sys.coords()[static_cast<std::size_t>(b)]);
      out += f[static_cast<std::size_t>(b)] * p.d_velocity(b);
    }
    return out;
  }
};

const ScalarExpr& field_component(const VectorField& x, Var v) { return x.component(v); }

void check_field(const VectorField& x, const GeodesicSystem& s) {
  if (x.n() != s.n())
    throw InputError("vector field has " + std::to_string(x.n()) + " x-components, system has " +
                     std::to_string(s.n()));
  if (!s.has_w() && !x.etaw.is_zero()) throw InputError("field has a D_w part but the system has no w");
}

}  // namespace

std::vector<VelocityPoly> prolong(const VectorField& x, const GeodesicSystem& s) {
  check_field(x, s);
  const Spray spray(s);
  const int nv = spray.nv;
  const VelocityPoly dxi = spray.total_derivative(VelocityPoly::constant(nv, x.xi));
  std::vector<VelocityPoly> p;
  for (int a = 0; a < nv; ++a) {
    const Var ya = s.coords()[static_cast<std::size_t>(a)];
    VelocityPoly pa = spray.total_derivative(VelocityPoly::constant(nv, field_component(x, ya)));
    pa -= VelocityPoly::velocity(nv, a) * dxi;
    p.push_back(std::move(pa));
  }
  return p;
}

std::vector<Residual> spray_residuals(const VectorField& x, const GeodesicSystem& s) {
  check_field(x, s);
  const Spray spray(s);
  const int nv = spray.nv;
  const auto p = prolong(x, s);
  const VelocityPoly lambda =
      ScalarExpr(-1) * spray.total_derivative(VelocityPoly::constant(nv, x.xi));

  // X~(F) = xi F_t + eta^b F_{y^b} + P^b F_{v^b}.
  auto prolonged_apply = [&](const VelocityPoly& fpoly) {
    VelocityPoly out = x.xi * fpoly.differentiate(Var::t());
    for (int b = 0; b < nv; ++b) {
      const Var yb = s.coords()[static_cast<std::size_t>(b)];
      out += field_component(x, yb) * fpoly.differentiate(yb);
      out += p[static_cast<std::size_t>(b)] * fpoly.d_velocity(b);
    }
    return out;
  };

  const auto names = velocity_names(s);
  std::vector<Residual> out;
  for (int a = 0; a < nv; ++a) {
    const auto& fa = spray.f[static_cast<std::size_t>(a)];
    VelocityPoly q = prolonged_apply(fa);
    q -= spray.total_derivative(p[static_cast<std::size_t>(a)]);
    q -= lambda * fa;
    const std::string coord = var_name(s.coords()[static_cast<std::size_t>(a)], s.n());
    // Every monomial of degree <= 3, zero or not, in a fixed order.
    std::function<void(VelocityPoly::Monomial&, int, int)> walk =
        [&](VelocityPoly::Monomial& m, int k, int left) {
          if (k == nv) {
            out.push_back({"[" + coord + "] " + monomial_string(m, names), q.coefficient(m)});
            return;
          }
          for (int e = 0; e <= left; ++e) {
            m[static_cast<std::size_t>(k)] = e;
            walk(m, k + 1, left - e);
          }
          m[static_cast<std::size_t>(k)] = 0;
        };
    VelocityPoly::Monomial m(static_cast<std::size_t>(nv), 0);
    walk(m, 0, 3);
  }
  return out;
}

// ---------------------------------------------------------------- (i)-(xv)

std::vector<Residual> determining_residuals(const VectorField& x, const GeodesicSystem& s) {
  check_field(x, s);
  if (!s.has_w() || !s.matrix()) return spray_residuals(x, s);
  const RatMatrix& a = *s.matrix();
  const int n = s.n();
  const Var T = Var::t(), W = Var::w();
  auto X = [](int i) { return Var::x(i); };
  auto A = [&](int i, int j) {
    return Rational(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  };
  auto d = [](const ScalarExpr& e, Var v1) { return e.differentiate(v1); };
  auto dd = [](const ScalarExpr& e, Var v1, Var v2) {
    return e.differentiate(v1).differentiate(v2);
  };
  auto delta = [](int i, int k) { return i == k ? Rational(1) : Rational(0); };
  auto nm = [&](int i) { return x_name(i, n); };

  const ScalarExpr& xi = x.xi;
  const ScalarExpr& ew = x.etaw;
  auto eta = [&](int i) -> const ScalarExpr& { return x.eta[static_cast<std::size_t>(i)]; };

  std::vector<Residual> out;
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) out.push_back({"(i) " + nm(j) + nm(k), dd(xi, X(j), X(k))});
  for (int i = 0; i < n; ++i) {
    ScalarExpr r = dd(xi, X(i), W);
    for (int j = 0; j < n; ++j) r += (A(j, i) / 2) * d(xi, X(j));
    out.push_back({"(ii) " + nm(i), r});
  }
  out.push_back({"(iii)", dd(xi, W, W)});
  out.push_back({"(iv)", dd(ew, T, T)});
  for (int k = 0; k < n; ++k) out.push_back({"(v) " + nm(k), dd(ew, T, X(k))});
  for (int k = 0; k < n; ++k)
    for (int m = k; m < n; ++m) out.push_back({"(vi) " + nm(k) + nm(m), dd(ew, X(k), X(m))});
  for (int k = 0; k < n; ++k) {
    ScalarExpr r = dd(ew, X(k), W) - dd(xi, T, X(k));
    for (int j = 0; j < n; ++j) r += (A(j, k) / 2) * d(ew, X(j));
    out.push_back({"(vii) " + nm(k), r});
  }
  out.push_back({"(viii)", dd(ew, W, W) - Rational(2) * dd(xi, T, W)});
  out.push_back({"(ix)", Rational(2) * dd(ew, T, W) - dd(xi, T, T)});
  for (int i = 0; i < n; ++i) out.push_back({"(x) " + nm(i), dd(eta(i), T, T)});
  for (int i = 0; i < n; ++i) {
    ScalarExpr r = dd(eta(i), T, W);
    for (int k = 0; k < n; ++k) r -= (A(i, k) / 2) * d(eta(k), T);
    out.push_back({"(xi) " + nm(i), r});
  }
  for (int i = 0; i < n; ++i) {
    ScalarExpr r = dd(eta(i), W, W);
    for (int j = 0; j < n; ++j) r -= A(i, j) * d(eta(j), W);
    out.push_back({"(xii) " + nm(i), r});
  }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      ScalarExpr r = Rational(2) * dd(eta(i), T, X(k)) - delta(i, k) * dd(xi, T, T) -
                     A(i, k) * d(ew, T);
      out.push_back({"(xiii) " + nm(i) + "," + nm(k), r});
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int m = k; m < n; ++m) {
        ScalarExpr r = dd(eta(i), X(k), X(m)) - (A(i, m) / 2) * d(ew, X(k)) -
                       (A(i, k) / 2) * d(ew, X(m)) - delta(i, k) * dd(xi, T, X(m)) -
                       delta(i, m) * dd(xi, T, X(k));
        out.push_back({"(xiv) " + nm(i) + "," + nm(k) + nm(m), r});
      }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      ScalarExpr r = dd(eta(i), X(k), W) - (A(i, k) / 2) * d(ew, W) - delta(i, k) * dd(xi, T, W);
      for (int j = 0; j < n; ++j) {
        r -= (A(i, j) / 2) * d(eta(j), X(k));
        r += (A(j, k) / 2) * d(eta(i), X(j));
      }
      out.push_back({"(xv) " + nm(i) + "," + nm(k), r});
    }
  return out;
}

SymmetryVerdict is_symmetry(const VectorField& x, const GeodesicSystem& s) {
  SymmetryVerdict v;
  for (const auto& r : determining_residuals(x, s))
    if (!r.expr.is_zero()) v.failing.push_back(r.label);
  v.is_symmetry = v.failing.empty();
  const Spray spray(s);
  v.lambda = ScalarExpr(-1) * spray.total_derivative(VelocityPoly::constant(spray.nv, x.xi));
  return v;
}

}  // namespace cansym
