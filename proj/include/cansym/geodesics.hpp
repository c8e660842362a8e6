#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cansym/rat_matrix.hpp"
#include "cansym/vector_field.hpp"

namespace cansym {

/// Point on a geodesic of x'' = (A x') w', w'' = 0: position (x, w),
/// velocity (u, q) at time t.
struct GeodesicState {
  double t = 0;
  Eigen::VectorXd x;
  double w = 0;
  Eigen::VectorXd u;
  double q = 0;
};

struct Trajectory {
  std::vector<GeodesicState> samples;
  /// Header "t,x1..,w,u1..,q" then one row per sample.
  std::string to_csv() const;
};

/// State after `elapsed` time: w = w0 + q s, u = e^{q s A} u0,
/// x = x0 + Phi(q s A) u0 s with Phi(M) = sum M^k / (k+1)!.
GeodesicState closed_form_geodesic(const RatMatrix& a, const GeodesicState& init, double elapsed);

/// Classical fixed-step RK4 over [init.t, init.t + duration]; steps + 1 samples.
Trajectory rk4_geodesic(const RatMatrix& a, const GeodesicState& init, double duration,
                        std::size_t steps);

/// Independent runs over many initial states, parallel over the states.
std::vector<Trajectory> rk4_batch(const RatMatrix& a, const std::vector<GeodesicState>& inits,
                                  double duration, std::size_t steps);
std::vector<Trajectory> rk4_batch_serial(const RatMatrix& a, const std::vector<GeodesicState>& inits,
                                         double duration, std::size_t steps);

/// Invariant one-forms contracted with the velocity:
/// right_i = u^i - (A x)^i q, left = e^{-wA} u, dw = q.
struct FirstIntegrals {
  Eigen::VectorXd right;
  Eigen::VectorXd left;
  double dw = 0;

  /// Largest absolute componentwise difference.
  double max_difference(const FirstIntegrals& o) const;
};

FirstIntegrals first_integrals(const RatMatrix& a, const GeodesicState& s);

/// Largest drift of any first integral along a trajectory.
double first_integral_drift(const RatMatrix& a, const Trajectory& traj);

struct TransportOptions {
  double flow_time = 0.1;   // epsilon
  double span = 1.0;        // geodesic time span that gets transported
  std::size_t points = 11;  // sample points along the geodesic
  std::size_t flow_steps = 200;
};

/// Flows a geodesic by X (points by the field, the initial state by its
/// prolongation), integrates the geodesic through the transported initial
/// state and returns the largest position mismatch. Symmetries give ~0.
double transport_check(const VectorField& x, const RatMatrix& a, const GeodesicState& init,
                       const TransportOptions& opts = {});

}  // namespace cansym
