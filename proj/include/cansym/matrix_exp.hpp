#pragma once

#include <Eigen/Dense>

#include "cansym/rat_matrix.hpp"

namespace cansym {

Eigen::MatrixXd to_real(const RatMatrix& m);
Eigen::VectorXd to_real(const RatVector& v);

/// Smallest k with A^k = 0 (exact), or 0 when A is not nilpotent.
std::size_t nilpotency_index(const RatMatrix& a);

/// e^{sA}. Nilpotent A is summed exactly in rationals and converted at the
/// end; otherwise scaling and squaring around a Taylor kernel, relative
/// error around 1e-13 for moderate norms.
Eigen::MatrixXd matrix_exp(const RatMatrix& a, double s);
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

/// Phi(M) = sum_k M^k / (k+1)!, i.e. (e^M - I) M^{-1} without needing the
/// inverse. Returns {e^M, Phi(M)}.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> exp_and_phi(const Eigen::MatrixXd& m);

}  // namespace cansym
