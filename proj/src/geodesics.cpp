#include "cansym/geodesics.hpp"

#include <cmath>
#include <sstream>

#include "cansym/determining.hpp"
#include "cansym/matrix_exp.hpp"

namespace cansym {

std::string Trajectory::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  const auto n = samples.empty() ? 0 : samples.front().x.size();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i) os << ",x" << i + 1;
  os << ",w";
  for (Eigen::Index i = 0; i < n; ++i) os << ",u" << i + 1;
  os << ",q\n";
  for (const auto& s : samples) {
    os << s.t;
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << s.x(i);
    os << ',' << s.w;
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << s.u(i);
    os << ',' << s.q << '\n';
  }
  return os.str();
}

GeodesicState closed_form_geodesic(const RatMatrix& a, const GeodesicState& init, double elapsed) {
  GeodesicState s = init;
  s.t = init.t + elapsed;
  s.w = init.w + init.q * elapsed;
  if (init.q == 0.0) {
    s.x = init.x + init.u * elapsed;
    return s;
  }
  const auto [e, phi] = exp_and_phi(to_real(a) * (init.q * elapsed));
  s.u = e * init.u;
  s.x = init.x + phi * init.u * elapsed;
  return s;
}

namespace {

struct Derivative {
  Eigen::VectorXd dx, du;
  double dw, dq;
};

Derivative rhs(const Eigen::MatrixXd& a, const GeodesicState& s) {
  return {s.u, a * s.u * s.q, s.q, 0.0};
}

GeodesicState advance(const GeodesicState& s, const Derivative& d, double h) {
  GeodesicState r = s;
  r.x = s.x + h * d.dx;
  r.u = s.u + h * d.du;
  r.w = s.w + h * d.dw;
  r.q = s.q + h * d.dq;
  r.t = s.t + h;
  return r;
}

Trajectory rk4(const Eigen::MatrixXd& a, const GeodesicState& init, double duration,
               std::size_t steps) {
  if (steps == 0) throw InputError("rk4_geodesic: steps must be positive");
  Trajectory traj;
  traj.samples.reserve(steps + 1);
  traj.samples.push_back(init);
  const double h = duration / static_cast<double>(steps);
  GeodesicState s = init;
  for (std::size_t k = 0; k < steps; ++k) {
    const Derivative k1 = rhs(a, s);
    const Derivative k2 = rhs(a, advance(s, k1, h / 2));
    const Derivative k3 = rhs(a, advance(s, k2, h / 2));
    const Derivative k4 = rhs(a, advance(s, k3, h));
    s.x += h / 6 * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx);
    s.u += h / 6 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du);
    s.w += h / 6 * (k1.dw + 2 * k2.dw + 2 * k3.dw + k4.dw);
    s.q += h / 6 * (k1.dq + 2 * k2.dq + 2 * k3.dq + k4.dq);
    s.t = init.t + h * static_cast<double>(k + 1);
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace

Trajectory rk4_geodesic(const RatMatrix& a, const GeodesicState& init, double duration,
                        std::size_t steps) {
  return rk4(to_real(a), init, duration, steps);
}

std::vector<Trajectory> rk4_batch(const RatMatrix& a, const std::vector<GeodesicState>& inits,
                                  double duration, std::size_t steps) {
  const Eigen::MatrixXd ar = to_real(a);
  std::vector<Trajectory> out(inits.size());
  const auto count = static_cast<std::ptrdiff_t>(inits.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = rk4(ar, inits[static_cast<std::size_t>(i)], duration, steps);
  return out;
}

std::vector<Trajectory> rk4_batch_serial(const RatMatrix& a, const std::vector<GeodesicState>& inits,
                                         double duration, std::size_t steps) {
  const Eigen::MatrixXd ar = to_real(a);
  std::vector<Trajectory> out;
  out.reserve(inits.size());
  for (const auto& s : inits) out.push_back(rk4(ar, s, duration, steps));
  return out;
}

double FirstIntegrals::max_difference(const FirstIntegrals& o) const {
  double m = std::abs(dw - o.dw);
  if (right.size()) m = std::max(m, (right - o.right).cwiseAbs().maxCoeff());
  if (left.size()) m = std::max(m, (left - o.left).cwiseAbs().maxCoeff());
  return m;
}

FirstIntegrals first_integrals(const RatMatrix& a, const GeodesicState& s) {
  const Eigen::MatrixXd ar = to_real(a);
  FirstIntegrals f;
  f.right = s.u - ar * s.x * s.q;
  f.left = matrix_exp(a, -s.w) * s.u;
  f.dw = s.q;
  return f;
}

double first_integral_drift(const RatMatrix& a, const Trajectory& traj) {
  if (traj.samples.empty()) return 0.0;
  const FirstIntegrals ref = first_integrals(a, traj.samples.front());
  double m = 0;
  for (const auto& s : traj.samples) m = std::max(m, first_integrals(a, s).max_difference(ref));
  return m;
}

// ---------------------------------------------------------------- transport

namespace {

// Numeric evaluation of a field and the pieces of its prolongation.
struct FieldFlow {
  int n;
  ScalarExpr xi, xi_t;
  std::vector<ScalarExpr> xi_y;           // d xi / d y^b
  std::vector<ScalarExpr> eta;            // eta^a, a over (x..., w)
  std::vector<ScalarExpr> eta_t;          // d eta^a / dt
  std::vector<std::vector<ScalarExpr>> eta_y;  // d eta^a / d y^b

  FieldFlow(const VectorField& x, const GeodesicSystem& sys) : n(sys.n()) {
    xi = x.xi;
    xi_t = x.xi.differentiate(Var::t());
    for (const Var v : sys.coords()) xi_y.push_back(x.xi.differentiate(v));
    for (const Var va : sys.coords()) {
      const ScalarExpr& e = x.component(va);
      eta.push_back(e);
      eta_t.push_back(e.differentiate(Var::t()));
      std::vector<ScalarExpr> row;
      for (const Var vb : sys.coords()) row.push_back(e.differentiate(vb));
      eta_y.push_back(std::move(row));
    }
  }

  // State layout: (t, y^1..y^N, v^1..v^N).
  Eigen::VectorXd point_velocity(const Eigen::VectorXd& s, bool prolonged) const {
    const std::size_t big_n = eta.size();
    EvalPoint p{s(0), s(static_cast<Eigen::Index>(big_n)), {}};
    for (int i = 0; i < n; ++i) p.x.push_back(s(1 + i));
    Eigen::VectorXd d = Eigen::VectorXd::Zero(s.size());
    d(0) = xi.evaluate(p);
    for (std::size_t a = 0; a < big_n; ++a) d(static_cast<Eigen::Index>(1 + a)) = eta[a].evaluate(p);
    if (!prolonged) return d;
    double dxi = xi_t.evaluate(p);
    for (std::size_t b = 0; b < big_n; ++b)
      dxi += s(static_cast<Eigen::Index>(1 + big_n + b)) * xi_y[b].evaluate(p);
    for (std::size_t a = 0; a < big_n; ++a) {
      double deta = eta_t[a].evaluate(p);
      for (std::size_t b = 0; b < big_n; ++b)
        deta += s(static_cast<Eigen::Index>(1 + big_n + b)) * eta_y[a][b].evaluate(p);
      d(static_cast<Eigen::Index>(1 + big_n + a)) =
          deta - s(static_cast<Eigen::Index>(1 + big_n + a)) * dxi;
    }
    return d;
  }

  Eigen::VectorXd flow(Eigen::VectorXd s, double time, std::size_t steps, bool prolonged) const {
    const double h = time / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      const auto k1 = point_velocity(s, prolonged);
      const auto k2 = point_velocity(s + h / 2 * k1, prolonged);
      const auto k3 = point_velocity(s + h / 2 * k2, prolonged);
      const auto k4 = point_velocity(s + h * k3, prolonged);
      s += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return s;
  }
};

Eigen::VectorXd pack(const GeodesicState& g) {
  const auto n = g.x.size();
  Eigen::VectorXd s(2 * n + 3);
  s(0) = g.t;
  s.segment(1, n) = g.x;
  s(n + 1) = g.w;
  s.segment(n + 2, n) = g.u;
  s(2 * n + 2) = g.q;
  return s;
}

GeodesicState unpack(const Eigen::VectorXd& s, Eigen::Index n) {
  GeodesicState g;
  g.t = s(0);
  g.x = s.segment(1, n);
  g.w = s(n + 1);
  g.u = s.segment(n + 2, n);
  g.q = s(2 * n + 2);
  return g;
}

}  // namespace

double transport_check(const VectorField& x, const RatMatrix& a, const GeodesicState& init,
                       const TransportOptions& opts) {
  const auto sys = GeodesicSystem::codim_one(a);
  if (x.n() != sys.n()) throw InputError("transport_check: field dimension mismatch");
  if (opts.points < 2) throw InputError("transport_check: need at least two points");
  const FieldFlow flow(x, sys);
  const Eigen::Index n = init.x.size();

  const GeodesicState moved_init =
      unpack(flow.flow(pack(init), opts.flow_time, opts.flow_steps, true), n);
  double worst = 0;
  for (std::size_t k = 0; k < opts.points; ++k) {
    const double tau = opts.span * static_cast<double>(k) / static_cast<double>(opts.points - 1);
    const GeodesicState on_curve = closed_form_geodesic(a, init, tau);
    const GeodesicState moved =
        unpack(flow.flow(pack(on_curve), opts.flow_time, opts.flow_steps, false), n);
    const GeodesicState predicted = closed_form_geodesic(a, moved_init, moved.t - moved_init.t);
    worst = std::max(worst, (predicted.x - moved.x).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(predicted.w - moved.w));
  }
  return worst;
}

}  // namespace cansym
