#include "phiact/nilpotent.hpp"

#include <cmath>
#include <stdexcept>

namespace phiact {

namespace {

// exp of a nilpotent matrix with vanishing index <= p+1: the Taylor sum
// terminates exactly, no truncation error
Matrix nilpotent_exp(const Matrix& N, int p) {
  const Index d = N.rows();
  Matrix E = Matrix::Identity(d, d);
  Matrix term = Matrix::Identity(d, d);
  for (int k = 1; k <= p; ++k) {
    term = (term * N) / double(k);
    E += term;
  }
  return E;
}

}  // namespace

NilpotentCoeffMatrix::NilpotentCoeffMatrix(int order) : p(order) {
  if (order < 0)
    throw std::invalid_argument("NilpotentCoeffMatrix: order must be >= 0");
  representation = Matrix::Zero(p + 1, p + 1);
  for (int i = 1; i < p; ++i) representation(i, i + 1) = 1.0;
}

Matrix exp_scaled(const NilpotentCoeffMatrix& J, double c) {
  if (!std::isfinite(c))
    throw std::invalid_argument("exp_scaled: scale must be finite");
  return nilpotent_exp(c * J.representation, J.p);
}

Matrix kron_exp(const NilpotentCoeffMatrix& J, const Vector& delta_diag,
                double s) {
  if (!(s > 0.0)) throw std::invalid_argument("kron_exp: s must be positive");
  const Index r = delta_diag.size();
  const Index d = (J.p + 1) * r;
  Matrix K = Matrix::Zero(d, d);
  for (int i = 0; i <= J.p; ++i)
    for (int j = 0; j <= J.p; ++j) {
      const double jij = J.representation(i, j);
      if (jij == 0.0) continue;
      for (Index k = 0; k < r; ++k)
        K(i * r + k, j * r + k) = jij * delta_diag(k) / s;
    }
  return nilpotent_exp(K, J.p);
}

Matrix kron_shifted(const NilpotentCoeffMatrix& J, const Vector& delta_diag,
                    const Vector& t_diag, double xi) {
  const Index r = delta_diag.size();
  if (t_diag.size() != r)
    throw std::invalid_argument("kron_shifted: Delta and T sizes differ");
  const Index d = (J.p + 1) * r;
  Matrix K = Matrix::Zero(d, d);
  for (int i = 0; i <= J.p; ++i)
    for (int j = 0; j <= J.p; ++j) {
      const double jij = J.representation(i, j);
      if (jij == 0.0) continue;
      for (Index k = 0; k < r; ++k)
        K(i * r + k, j * r + k) = jij * delta_diag(k);
    }
  for (int i = 0; i <= J.p; ++i)
    for (Index k = 0; k < r; ++k) K(i * r + k, i * r + k) -= xi * t_diag(k);
  return K;
}

}  // namespace phiact
