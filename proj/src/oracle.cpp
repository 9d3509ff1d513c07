#include "phiact/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace phiact {

namespace {

using LongMatrix =
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

// scaling-and-squaring Taylor exponential in extended precision with a
// compensated-summation pass over the Taylor terms
LongMatrix expm_core(const LongMatrix& A) {
  const Index d = A.rows();
  const long double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int sigma = 0;
  if (norm1 > 0.25L) sigma = int(std::ceil(std::log2(double(norm1 / 0.25L))));

  const LongMatrix X = A / std::exp2l(sigma);
  LongMatrix sum = LongMatrix::Identity(d, d);
  LongMatrix comp = LongMatrix::Zero(d, d);
  LongMatrix term = LongMatrix::Identity(d, d);
  for (int k = 1; k <= 30; ++k) {
    term = (term * X) / (long double)(k);
    const LongMatrix y = term - comp;
    const LongMatrix t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  for (int q = 0; q < sigma; ++q) sum = sum * sum;
  return sum;
}

LongMatrix to_long(const Matrix& A) { return A.cast<long double>(); }

Matrix to_double(const LongMatrix& A) { return A.cast<double>(); }

}  // namespace

Matrix dense_expm(const Matrix& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("dense_expm: matrix must be square");
  if (!A.allFinite())
    throw std::invalid_argument("dense_expm: matrix has non-finite entries");
  Matrix E = to_double(expm_core(to_long(A)));
  if (!E.allFinite())
    throw std::runtime_error("dense_expm: exponential overflowed");
  return E;
}

Vector reference_w(const Matrix& A, const Matrix& V, double t, double alpha) {
  const Index n = A.rows();
  if (A.rows() != A.cols())
    throw std::invalid_argument("reference_w: A must be square");
  if (V.rows() != n)
    throw std::invalid_argument("reference_w: V row count mismatch");
  const int p = int(V.cols()) - 1;
  if (p < 0) throw std::invalid_argument("reference_w: V is empty");
  if (n + p > 2000)
    throw std::invalid_argument("reference_w: augmented dimension above 2000");

  if (p == 0) {
    Vector w = to_double(expm_core(to_long(t * A)) * to_long(V.col(0)));
    if (!w.allFinite())
      throw std::runtime_error("reference_w: exponential overflowed");
    return w;
  }

  // [[tA, Vhat],[0, J_p(0)]] with alpha^j absorbed into v_j; the tail
  // vector is [v_0; e_p]
  Matrix B = Matrix::Zero(n + p, n + p);
  B.topLeftCorner(n, n) = t * A;
  double apow = alpha;
  for (int j = 1; j <= p; ++j) {
    B.block(0, n + p - j, n, 1) = apow * V.col(j);
    apow *= alpha;
  }
  for (int i = 0; i < p - 1; ++i) B(n + i, n + i + 1) = 1.0;

  Vector tail = Vector::Zero(n + p);
  tail.head(n) = V.col(0);
  tail(n + p - 1) = 1.0;

  const Vector full = to_double(expm_core(to_long(B)) * to_long(tail));
  Vector w = full.head(n);
  if (!w.allFinite())
    throw std::runtime_error("reference_w: exponential overflowed");
  return w;
}

std::vector<Matrix> dense_phi(const Matrix& M, double t, int jmax) {
  const Index d = M.rows();
  if (M.rows() != M.cols())
    throw std::invalid_argument("dense_phi: matrix must be square");
  if (d > 50) throw std::invalid_argument("dense_phi: dimension above 50");
  if (jmax < 0) throw std::invalid_argument("dense_phi: jmax must be >= 0");

  // block-bidiagonal embedding: exp([[tM, I, .. ],[0, 0, I, ..], ..])
  // carries phi_k(tM) in block (0, k) of the first block row
  const Index dim = d * (jmax + 1);
  Matrix K = Matrix::Zero(dim, dim);
  K.topLeftCorner(d, d) = t * M;
  for (int b = 0; b + 1 <= jmax; ++b)
    K.block(b * d, (b + 1) * d, d, d) = Matrix::Identity(d, d);

  const Matrix E = to_double(expm_core(to_long(K)));
  if (!E.allFinite())
    throw std::runtime_error("dense_phi: exponential overflowed");

  std::vector<Matrix> phis;
  phis.reserve(jmax + 1);
  for (int k = 0; k <= jmax; ++k) phis.push_back(E.block(0, k * d, d, d));
  return phis;
}

Vector lowrank_reference(const Matrix& U, const Matrix& M, const Matrix& V,
                         double t) {
  const Index r = U.cols();
  if (M.rows() != r || M.cols() != r)
    throw std::invalid_argument("lowrank_reference: core size mismatch");
  if (r > 50) throw std::invalid_argument("lowrank_reference: rank above 50");
  const Matrix gram = U.transpose() * U - Matrix::Identity(r, r);
  if (gram.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("lowrank_reference: U is not orthonormal");

  const int p = int(V.cols()) - 1;
  const Matrix W = U * M.transpose();
  const auto phis = dense_phi(M, t, p + 1);

  Vector w = Vector::Zero(V.rows());
  Vector core_sum = Vector::Zero(r);
  double inv_fact = 1.0;
  for (int j = 0; j <= p; ++j) {
    if (j > 0) inv_fact /= double(j);
    w += V.col(j) * inv_fact;
    core_sum += phis[j + 1] * (W.transpose() * V.col(j));
  }
  w += U * (t * core_sum);
  return w;
}

}  // namespace phiact
