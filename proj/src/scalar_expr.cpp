#include "cansym/scalar_expr.hpp"

#include <cmath>
#include <stdexcept>

namespace cansym {

std::string x_name(int i, int n) {
  static const char* kShort[] = {"x", "y", "z"};
  if (n <= 3 && i < 3) return kShort[i];
  return "x" + std::to_string(i + 1);
}

std::string var_name(Var v, int n) {
  switch (v.kind) {
    case Var::Kind::T: return "t";
    case Var::Kind::W: return "w";
    case Var::Kind::X: return x_name(v.index, n);
  }
  return "?";
}

void Atom::set_x_power(int i, int p) {
  const auto idx = static_cast<std::size_t>(i);
  if (idx >= x_pow.size()) {
    if (p == 0) return;
    x_pow.resize(idx + 1, 0);
  }
  x_pow[idx] = p;
  while (!x_pow.empty() && x_pow.back() == 0) x_pow.pop_back();
}

bool operator<(const Atom& a, const Atom& b) {
  if (a.t_pow != b.t_pow) return a.t_pow < b.t_pow;
  if (a.w_pow != b.w_pow) return a.w_pow < b.w_pow;
  const int len = static_cast<int>(std::max(a.x_pow.size(), b.x_pow.size()));
  for (int i = 0; i < len; ++i)
    if (a.x_power(i) != b.x_power(i)) return a.x_power(i) < b.x_power(i);
  if (a.rho != b.rho) return a.rho < b.rho;
  if (a.trig != b.trig) return a.trig < b.trig;
  return a.sigma < b.sigma;
}

namespace {

// Adds c * base-with-trig(sigma) after normalizing sigma >= 0.
void add_trig(ScalarExpr::Terms& out, Atom base, Trig trig, Rational sigma, Rational c) {
  if (trig != Trig::None && sgn(sigma) < 0) {
    sigma = -sigma;
    if (trig == Trig::Sin) c = -c;
  }
  if (trig != Trig::None && sgn(sigma) == 0) {
    if (trig == Trig::Sin) return;
    trig = Trig::None;
  }
  base.trig = trig;
  base.sigma = trig == Trig::None ? Rational(0) : sigma;
  auto [it, inserted] = out.try_emplace(std::move(base), c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) out.erase(it);
  }
}

void multiply_atoms(ScalarExpr::Terms& out, const Atom& a, const Atom& b, const Rational& c) {
  Atom base;
  base.t_pow = a.t_pow + b.t_pow;
  base.w_pow = a.w_pow + b.w_pow;
  const int len = static_cast<int>(std::max(a.x_pow.size(), b.x_pow.size()));
  for (int i = 0; i < len; ++i) base.set_x_power(i, a.x_power(i) + b.x_power(i));
  base.rho = a.rho + b.rho;

  if (a.trig == Trig::None || b.trig == Trig::None) {
    const Atom& t = a.trig == Trig::None ? b : a;
    add_trig(out, std::move(base), t.trig, t.sigma, c);
    return;
  }
  const Rational half = c / 2;
  const Rational sum = a.sigma + b.sigma, diff = a.sigma - b.sigma;
  if (a.trig == Trig::Sin && b.trig == Trig::Sin) {
    add_trig(out, base, Trig::Cos, diff, half);
    add_trig(out, base, Trig::Cos, sum, -half);
  } else if (a.trig == Trig::Cos && b.trig == Trig::Cos) {
    add_trig(out, base, Trig::Cos, diff, half);
    add_trig(out, base, Trig::Cos, sum, half);
  } else {
    // sin(p) cos(q) = (sin(p+q) + sin(p-q)) / 2 with p the sine argument.
    const Rational p = a.trig == Trig::Sin ? a.sigma : b.sigma;
    const Rational q = a.trig == Trig::Sin ? b.sigma : a.sigma;
    add_trig(out, base, Trig::Sin, p + q, half);
    add_trig(out, base, Trig::Sin, p - q, half);
  }
}

std::string rational_factor(const Rational& r, const std::string& var) {
  if (r == 1) return var;
  if (r == -1) return "-" + var;
  return to_string(r) + "*" + var;
}

}  // namespace

ScalarExpr::ScalarExpr(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Atom{}, c);
}

ScalarExpr ScalarExpr::variable(Var v) {
  Atom a;
  switch (v.kind) {
    case Var::Kind::T: a.t_pow = 1; break;
    case Var::Kind::W: a.w_pow = 1; break;
    case Var::Kind::X:
      if (v.index < 0) throw InputError("negative coordinate index");
      a.set_x_power(v.index, 1);
      break;
  }
  return from_atom(std::move(a), 1);
}

ScalarExpr ScalarExpr::exp_w(const Rational& rho) {
  Atom a;
  a.rho = rho;
  return from_atom(std::move(a), 1);
}

ScalarExpr ScalarExpr::sin_w(const Rational& sigma) {
  ScalarExpr e;
  add_trig(e.terms_, Atom{}, Trig::Sin, sigma, 1);
  return e;
}

ScalarExpr ScalarExpr::cos_w(const Rational& sigma) {
  ScalarExpr e;
  add_trig(e.terms_, Atom{}, Trig::Cos, sigma, 1);
  return e;
}

ScalarExpr ScalarExpr::from_atom(Atom atom, const Rational& coeff) {
  ScalarExpr e;
  add_trig(e.terms_, atom, atom.trig, atom.sigma, coeff);
  return e;
}

bool ScalarExpr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Atom{});
}

Rational ScalarExpr::constant_value() const {
  if (!is_constant()) throw std::logic_error("expression is not constant");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void ScalarExpr::add_term(const Atom& a, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

ScalarExpr& ScalarExpr::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  ScalarExpr out;
  for (const auto& [ta, ca] : a.terms_)
    for (const auto& [tb, cb] : b.terms_) multiply_atoms(out.terms_, ta, tb, ca * cb);
  return out;
}

ScalarExpr ScalarExpr::pow(int k) const {
  if (k < 0) throw InputError("negative power of an expression");
  ScalarExpr r(1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

ScalarExpr ScalarExpr::differentiate(Var v) const {
  ScalarExpr out;
  for (const auto& [a, c] : terms_) {
    switch (v.kind) {
      case Var::Kind::T:
        if (a.t_pow > 0) {
          Atom d = a;
          --d.t_pow;
          out.add_term(d, c * a.t_pow);
        }
        break;
      case Var::Kind::X: {
        const int p = a.x_power(v.index);
        if (p > 0) {
          Atom d = a;
          d.set_x_power(v.index, p - 1);
          out.add_term(d, c * p);
        }
        break;
      }
      case Var::Kind::W: {
        if (a.w_pow > 0) {
          Atom d = a;
          --d.w_pow;
          out.add_term(d, c * a.w_pow);
        }
        if (sgn(a.rho) != 0) out.add_term(a, c * a.rho);
        if (a.trig == Trig::Sin) {
          Atom d = a;
          d.trig = Trig::Cos;
          out.add_term(d, c * a.sigma);
        } else if (a.trig == Trig::Cos) {
          Atom d = a;
          d.trig = Trig::Sin;
          out.add_term(d, -c * a.sigma);
        }
        break;
      }
    }
  }
  return out;
}

ScalarExpr differentiate(const ScalarExpr& e, Var v) { return e.differentiate(v); }

double ScalarExpr::evaluate(const EvalPoint& p) const {
  double sum = 0;
  for (const auto& [a, c] : terms_) {
    double v = c.get_d();
    if (a.t_pow) v *= std::pow(p.t, a.t_pow);
    if (a.w_pow) v *= std::pow(p.w, a.w_pow);
    for (std::size_t i = 0; i < a.x_pow.size(); ++i) {
      if (a.x_pow[i] == 0) continue;
      if (i >= p.x.size()) throw InputError("evaluation point lacks coordinate x" + std::to_string(i + 1));
      v *= std::pow(p.x[i], a.x_pow[i]);
    }
    if (sgn(a.rho) != 0) v *= std::exp(a.rho.get_d() * p.w);
    if (a.trig == Trig::Sin) v *= std::sin(a.sigma.get_d() * p.w);
    if (a.trig == Trig::Cos) v *= std::cos(a.sigma.get_d() * p.w);
    sum += v;
  }
  return sum;
}

int ScalarExpr::x_extent() const {
  int n = 0;
  for (const auto& [a, c] : terms_) n = std::max(n, static_cast<int>(a.x_pow.size()));
  return n;
}

bool ScalarExpr::is_rational_multiple_of_w(Rational& factor) const {
  if (terms_.empty()) {
    factor = 0;
    return true;
  }
  if (terms_.size() != 1) return false;
  const auto& [a, c] = *terms_.begin();
  Atom w;
  w.w_pow = 1;
  if (!(a == w)) return false;
  factor = c;
  return true;
}

std::string ScalarExpr::to_string(int n) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [a, c] : terms_) {
    std::vector<std::string> f;
    auto power = [](const std::string& name, int p) {
      return p == 1 ? name : name + "^" + std::to_string(p);
    };
    if (a.t_pow) f.push_back(power("t", a.t_pow));
    if (a.w_pow) f.push_back(power("w", a.w_pow));
    for (std::size_t i = 0; i < a.x_pow.size(); ++i)
      if (a.x_pow[i]) f.push_back(power(x_name(static_cast<int>(i), n), a.x_pow[i]));
    if (sgn(a.rho) != 0) f.push_back("exp(" + rational_factor(a.rho, "w") + ")");
    if (a.trig == Trig::Sin) f.push_back("sin(" + rational_factor(a.sigma, "w") + ")");
    if (a.trig == Trig::Cos) f.push_back("cos(" + rational_factor(a.sigma, "w") + ")");

    const bool negative = sgn(c) < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string body;
    for (std::size_t i = 0; i < f.size(); ++i) body += (i ? "*" : "") + f[i];
    std::string term;
    if (body.empty())
      term = cansym::to_string(mag);
    else if (mag == 1)
      term = body;
    else
      term = cansym::to_string(mag) + "*" + body;

    if (first)
      out = negative ? "-" + term : term;
    else
      out += negative ? " - " + term : " + " + term;
    first = false;
  }
  return out;
}

}  // namespace cansym
