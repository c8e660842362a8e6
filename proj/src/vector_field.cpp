#include "cansym/vector_field.hpp"

namespace cansym {

VectorField VectorField::d_t(int n) {
  VectorField f(n);
  f.xi = 1;
  return f;
}

VectorField VectorField::d_w(int n) {
  VectorField f(n);
  f.etaw = 1;
  return f;
}

VectorField VectorField::d_x(int n, int i) {
  VectorField f(n);
  f.eta.at(static_cast<std::size_t>(i)) = 1;
  return f;
}

const ScalarExpr& VectorField::component(Var v) const {
  switch (v.kind) {
    case Var::Kind::T: return xi;
    case Var::Kind::W: return etaw;
    case Var::Kind::X: return eta.at(static_cast<std::size_t>(v.index));
  }
  return xi;
}

ScalarExpr& VectorField::component(Var v) {
  return const_cast<ScalarExpr&>(std::as_const(*this).component(v));
}

ScalarExpr VectorField::apply(const ScalarExpr& f) const {
  ScalarExpr out = xi * f.differentiate(Var::t());
  for (int i = 0; i < n(); ++i)
    if (!eta[static_cast<std::size_t>(i)].is_zero())
      out += eta[static_cast<std::size_t>(i)] * f.differentiate(Var::x(i));
  if (!etaw.is_zero()) out += etaw * f.differentiate(Var::w());
  return out;
}

bool VectorField::is_zero() const {
  if (!xi.is_zero() || !etaw.is_zero()) return false;
  for (const auto& e : eta)
    if (!e.is_zero()) return false;
  return true;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (n() != o.n()) throw InputError("vector field dimension mismatch");
  xi += o.xi;
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] += o.eta[i];
  etaw += o.etaw;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (n() != o.n()) throw InputError("vector field dimension mismatch");
  xi -= o.xi;
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] -= o.eta[i];
  etaw -= o.etaw;
  return *this;
}

VectorField operator*(const ScalarExpr& f, const VectorField& x) {
  VectorField r(x.n());
  r.xi = f * x.xi;
  for (std::size_t i = 0; i < x.eta.size(); ++i) r.eta[i] = f * x.eta[i];
  r.etaw = f * x.etaw;
  return r;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.n() != y.n()) throw InputError("lie_bracket: dimension mismatch");
  VectorField r(x.n());
  r.xi = x.apply(y.xi) - y.apply(x.xi);
  for (std::size_t i = 0; i < r.eta.size(); ++i) r.eta[i] = x.apply(y.eta[i]) - y.apply(x.eta[i]);
  r.etaw = x.apply(y.etaw) - y.apply(x.etaw);
  return r;
}

std::string to_string(const VectorField& x) {
  const int n = x.n();
  std::string out;
  auto emit = [&](const ScalarExpr& coeff, const std::string& op) {
    for (const auto& [atom, c] : coeff.terms()) {
      const bool negative = sgn(c) < 0;
      const std::string body =
          ScalarExpr::from_atom(atom, negative ? Rational(-c) : c).to_string(n);
      const std::string term = body == "1" ? op : body + "*" + op;
      if (out.empty())
        out = negative ? "-" + term : term;
      else
        out += negative ? " - " + term : " + " + term;
    }
  };
  emit(x.xi, "Dt");
  for (int i = 0; i < n; ++i) emit(x.eta[static_cast<std::size_t>(i)], "D" + x_name(i, n));
  emit(x.etaw, "Dw");
  return out.empty() ? "0" : out;
}

}  // namespace cansym
