#include "cansym/numeric_residual.hpp"

#include <cmath>
#include <algorithm>
#include <random>

namespace cansym {

std::vector<EvalPoint> sample_points(const GeodesicSystem& s, std::size_t count,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::vector<EvalPoint> pts(count);
  for (auto& p : pts) {
    p.t = box(rng);
    p.x.resize(static_cast<std::size_t>(s.n()));
    for (auto& xi : p.x) xi = box(rng);
    p.w = s.has_w() ? box(rng) : 0.0;
  }
  return pts;
}

std::vector<std::vector<double>> evaluate_batch(const std::vector<ScalarExpr>& exprs,
                                                const std::vector<EvalPoint>& points) {
  std::vector<std::vector<double>> out(points.size(), std::vector<double>(exprs.size()));
  const auto np = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < np; ++p)
    for (std::size_t e = 0; e < exprs.size(); ++e)
      out[static_cast<std::size_t>(p)][e] = exprs[e].evaluate(points[static_cast<std::size_t>(p)]);
  return out;
}

std::vector<std::vector<double>> evaluate_batch_serial(const std::vector<ScalarExpr>& exprs,
                                                       const std::vector<EvalPoint>& points) {
  std::vector<std::vector<double>> out(points.size(), std::vector<double>(exprs.size()));
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t e = 0; e < exprs.size(); ++e) out[p][e] = exprs[e].evaluate(points[p]);
  return out;
}

namespace {

// Pointwise check that never builds the symbolic residuals: the field's
// derivatives up to order two are evaluated numerically and the second
// prolongation condition
//   eta2^a - (df^a/dv^b) eta1^b = 0,  f^a = -Gamma^a_bc v^b v^c,
// is assembled in floating point at random velocities.
struct DerivativeTable {
  int dim = 0;                   // N spatial coordinates
  std::vector<ScalarExpr> exprs;  // flattened, see index helpers
  // Layout per component c in (xi, eta^1..eta^N): value, d_t, d_b (N),
  // d_tt, d_tb (N), d_bc (N*N).
  std::size_t stride() const { return 3 + 2 * static_cast<std::size_t>(dim) + static_cast<std::size_t>(dim * dim); }
};

DerivativeTable derivative_table(const VectorField& x, const GeodesicSystem& s) {
  DerivativeTable d;
  d.dim = s.dim();
  const auto& coords = s.coords();
  std::vector<ScalarExpr> comps{x.xi};
  for (const Var v : coords) comps.push_back(x.component(v));
  for (const auto& c : comps) {
    const ScalarExpr ct = c.differentiate(Var::t());
    d.exprs.push_back(c);
    d.exprs.push_back(ct);
    std::vector<ScalarExpr> first;
    for (const Var v : coords) first.push_back(c.differentiate(v));
    d.exprs.insert(d.exprs.end(), first.begin(), first.end());
    d.exprs.push_back(ct.differentiate(Var::t()));
    for (const Var v : coords) d.exprs.push_back(ct.differentiate(v));
    for (const auto& f : first)
      for (const Var v : coords) d.exprs.push_back(f.differentiate(v));
  }
  return d;
}

double point_residual(const DerivativeTable& d, const std::vector<double>& val, const GeodesicSystem& s,
                      const std::vector<double>& v) {
  const auto n = static_cast<std::size_t>(d.dim);
  const std::size_t st = d.stride();
  auto at = [&](std::size_t comp, std::size_t off) { return val[comp * st + off]; };
  auto dt = [&](std::size_t c) { return at(c, 1); };
  auto db = [&](std::size_t c, std::size_t b) { return at(c, 2 + b); };
  auto dtt = [&](std::size_t c) { return at(c, 2 + n); };
  auto dtb = [&](std::size_t c, std::size_t b) { return at(c, 3 + n + b); };
  auto dbc = [&](std::size_t c, std::size_t b, std::size_t k) { return at(c, 3 + 2 * n + b * n + k); };
  auto gamma = [&](std::size_t a, std::size_t b, std::size_t c) {
    return s.gamma(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)).get_d();
  };

  std::vector<double> f(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) f[a] -= gamma(a, b, c) * v[b] * v[c];

  // Total derivative along the spray of a component (order one and two).
  auto d1 = [&](std::size_t c) {
    double r = dt(c);
    for (std::size_t b = 0; b < n; ++b) r += v[b] * db(c, b);
    return r;
  };
  auto d2 = [&](std::size_t c) {
    double r = dtt(c);
    for (std::size_t b = 0; b < n; ++b) {
      r += 2 * v[b] * dtb(c, b) + f[b] * db(c, b);
      for (std::size_t k = 0; k < n; ++k) r += v[b] * v[k] * dbc(c, b, k);
    }
    return r;
  };

  const double dxi = d1(0), ddxi = d2(0);
  std::vector<double> eta1(n);
  for (std::size_t a = 0; a < n; ++a) eta1[a] = d1(a + 1) - v[a] * dxi;
  double worst = 0;
  for (std::size_t a = 0; a < n; ++a) {
    // D(eta1^a) = D^2 eta^a - f^a D xi - v^a D^2 xi; eta2 = D(eta1) - f^a D xi.
    const double eta2 = d2(a + 1) - 2 * f[a] * dxi - v[a] * ddxi;
    double coupling = 0;
    for (std::size_t b = 0; b < n; ++b) {
      double dfdv = 0;
      for (std::size_t c = 0; c < n; ++c) dfdv -= (gamma(a, b, c) + gamma(a, c, b)) * v[c];
      coupling += dfdv * eta1[b];
    }
    const double r = eta2 - coupling;
    worst = std::isnan(r) ? INFINITY : std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<std::vector<double>> sample_velocities(const GeodesicSystem& s, std::size_t count,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  std::vector<std::vector<double>> out(count, std::vector<double>(static_cast<std::size_t>(s.dim())));
  for (auto& v : out)
    for (auto& c : v) c = box(rng);
  return out;
}

template <class Batch>
double residual_with(const VectorField& x, const GeodesicSystem& s, std::size_t samples,
                     std::uint64_t seed, Batch batch) {
  const DerivativeTable table = derivative_table(x, s);
  const auto points = sample_points(s, samples, seed);
  const auto vel = sample_velocities(s, samples, seed);
  const auto values = batch(table.exprs, points);
  double m = 0;
  for (std::size_t p = 0; p < points.size(); ++p) m = std::max(m, point_residual(table, values[p], s, vel[p]));
  return m;
}

}  // namespace

double numeric_residual(const VectorField& x, const GeodesicSystem& s, std::size_t samples,
                        std::uint64_t seed) {
  return residual_with(x, s, samples, seed, evaluate_batch);
}

double numeric_residual_serial(const VectorField& x, const GeodesicSystem& s, std::size_t samples,
                               std::uint64_t seed) {
  return residual_with(x, s, samples, seed, evaluate_batch_serial);
}

}  // namespace cansym
