#include "cansym/matrix_exp.hpp"

#include <cmath>

namespace cansym {

namespace {

constexpr double kTermTol = 1e-16;

// Squaring count so that ||M / 2^s|| <= 1/2.
int scaling_steps(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(norm > 0.5)) return 0;
  return static_cast<int>(std::ceil(std::log2(norm / 0.5)));
}

}  // namespace

Eigen::MatrixXd to_real(const RatMatrix& m) {
  Eigen::MatrixXd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).get_d();
  return r;
}

Eigen::VectorXd to_real(const RatVector& v) {
  Eigen::VectorXd r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r(i) = v[i].get_d();
  return r;
}

std::size_t nilpotency_index(const RatMatrix& a) {
  if (!a.is_square()) throw InputError("nilpotency_index: matrix must be square");
  RatMatrix p = RatMatrix::identity(a.rows());
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    p = p * a;
    if (p.is_zero()) return k;
  }
  return a.rows() == 0 ? 1 : 0;
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  const int s = scaling_steps(m);
  const Eigen::MatrixXd scaled = m / std::ldexp(1.0, s);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k < 60; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.norm() <= kTermTol * result.norm()) break;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

Eigen::MatrixXd matrix_exp(const RatMatrix& a, double s) {
  if (!a.is_square()) throw InputError("matrix_exp: matrix must be square");
  if (const auto k = nilpotency_index(a); k > 0) {
    // Terminating series: sum_{j<k} s^j A^j / j!, coefficients exact.
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    RatMatrix p = RatMatrix::identity(a.rows());
    Rational fact = 1;
    double spow = 1.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j > 0) {
        p = p * a;
        fact *= static_cast<long>(j);
      }
      out += to_real(p * (1 / fact)) * spow;
      spow *= s;
    }
    return out;
  }
  return matrix_exp(to_real(a) * s);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> exp_and_phi(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  const int s = scaling_steps(m);
  const Eigen::MatrixXd scaled = m / std::ldexp(1.0, s);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  // Series for Phi at the scaled argument; e = I + M Phi(M).
  Eigen::MatrixXd phi = id;
  Eigen::MatrixXd term = id;
  for (int k = 1; k < 60; ++k) {
    term = term * scaled / static_cast<double>(k + 1);
    phi += term;
    if (term.norm() <= kTermTol * phi.norm()) break;
  }
  Eigen::MatrixXd e = id + scaled * phi;
  // Phi(2M) = Phi(M) (e^M + I) / 2, e^{2M} = (e^M)^2.
  for (int i = 0; i < s; ++i) {
    phi = 0.5 * phi * (e + id);
    e = e * e;
  }
  return {e, phi};
}

}  // namespace cansym
