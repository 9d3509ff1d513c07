#include "phiact/problems.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "phiact/rng.hpp"

namespace phiact {

Matrix chebyshev_laplacian(int N, double L) {
  if (N < 4) throw std::invalid_argument("chebyshev_laplacian: N must be >= 4");
  if (!(L > 0.0))
    throw std::invalid_argument("chebyshev_laplacian: L must be positive");

  Vector x(N + 1), c(N + 1);
  for (int j = 0; j <= N; ++j) {
    x(j) = (std::cos(M_PI * j / N) + 1.0) * (L / 2.0);
    c(j) = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2 == 0) ? 1.0 : -1.0);
  }

  Matrix D(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j) {
      const double dx = x(i) - x(j) + (i == j ? 1.0 : 0.0);
      D(i, j) = (c(i) / c(j)) / dx;
    }
  const Vector row_sums = D.rowwise().sum();
  D -= Matrix(row_sums.asDiagonal());

  const double scale = (2.0 / L) * (2.0 / L);
  Matrix A = scale * (D * D);
  return A.block(1, 1, N - 1, N - 1);
}

Matrix dct_basis(Index n, Index r) {
  if (r < 1 || r > n)
    throw std::invalid_argument("dct_basis: need 1 <= r <= n");
  Matrix U(n, r);
  const double scale = std::sqrt(2.0 / double(n));
  for (Index k = 0; k < r; ++k) {
    const double ak = k == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
    for (Index i = 0; i < n; ++i)
      U(i, k) = scale * ak * std::cos(M_PI * (i + 0.5) * k / double(n));
  }
  return U;
}

namespace {

Matrix core_m1() {
  Matrix M(2, 2);
  M << 0.0, 10.0, -10.0, 0.0;
  return M;
}

Matrix core_m2() {
  Matrix M(2, 2);
  M << -1.0, 1e5, 0.0, -10.0;
  return M;
}

Matrix core_m3() {
  const double a = 2e10, b = 4e8 / 6.0, c = 200.0 / 3.0, d = 3.0, e = 1e-8;
  Matrix M(3, 3);
  M << 0.0, e, 0.0, -(a + b), -d, a, c, 0.0, -c;
  return M;
}

}  // namespace

LowRankCore lowrank_core_m1() { return {"M1", core_m1(), 20000, 3}; }
LowRankCore lowrank_core_m2() { return {"M2", core_m2(), 40000, 4}; }
LowRankCore lowrank_core_m3() { return {"M3", core_m3(), 50000, 2}; }

LowRankOperator lowrank_operator(const LowRankCore& core) {
  const Index r = core.core.rows();
  if (core.core.cols() != r)
    throw std::invalid_argument("lowrank_operator: core must be square");
  if (core.n < r)
    throw std::invalid_argument("lowrank_operator: n below core rank");

  Matrix U = dct_basis(core.n, r);
  Matrix W = U * core.core.transpose();
  auto held_u = std::make_shared<const Matrix>(U);
  auto held_w = std::make_shared<const Matrix>(W);
  LinearOperator op(
      core.n,
      [held_u, held_w](const Eigen::Ref<const Matrix>& X) -> Matrix {
        return *held_u * (held_w->transpose() * X);
      },
      core.name);
  return {std::move(op), std::move(U), std::move(W)};
}

Vector ADRProblem::reaction(const Vector& u) const {
  return gamma * u.array() * (u.array() - 0.5) * (1.0 - u.array());
}

ADRProblem adr_build(int nx, int ny, double eps, double alpha_adv,
                     double gamma) {
  if (nx < 8 || ny < 8)
    throw std::invalid_argument("adr_build: grid must be at least 8x8");

  // unknowns at x_i = i/nx, y_j = j/ny for i < nx, j < ny; the x = 1 and
  // y = 1 edges are Dirichlet and eliminated, the x = 0 and y = 0 edges
  // are Neumann via mirror ghosts
  const double hx = 1.0 / nx;
  const double hy = 1.0 / ny;
  const Index n = Index(nx) * Index(ny);

  const double dxx = eps / (hx * hx);
  const double dyy = eps / (hy * hy);
  const double ax = alpha_adv / (2.0 * hx);
  const double ay = alpha_adv / (2.0 * hy);

  const int nx_c = nx, ny_c = ny;
  auto apply = [nx_c, ny_c, dxx, dyy, ax, ay,
                n](const Eigen::Ref<const Matrix>& X) -> Matrix {
    Matrix Y(n, X.cols());
    for (Index col = 0; col < X.cols(); ++col) {
      const auto u = X.col(col);
      auto y = Y.col(col);
      for (int j = 0; j < ny_c; ++j) {
        for (int i = 0; i < nx_c; ++i) {
          const Index idx = Index(j) * nx_c + i;
          const double uc = u(idx);
          const double uw = i > 0 ? u(idx - 1) : u(idx + 1);          // mirror
          const double ue = i < nx_c - 1 ? u(idx + 1) : 0.0;          // wall
          const double us = j > 0 ? u(idx - nx_c) : u(idx + nx_c);    // mirror
          const double un = j < ny_c - 1 ? u(idx + nx_c) : 0.0;       // wall
          const double lap = dxx * (uw - 2.0 * uc + ue) +
                             dyy * (us - 2.0 * uc + un);
          const double adv = ax * (ue - uw) + ay * (un - us);
          y(idx) = lap - adv;
        }
      }
    }
    return Y;
  };

  ADRProblem prob;
  prob.nx = nx;
  prob.ny = ny;
  prob.eps = eps;
  prob.alpha_adv = alpha_adv;
  prob.gamma = gamma;
  prob.op = LinearOperator(n, apply, "adr");
  prob.u0.resize(n);
  for (int j = 0; j < ny; ++j) {
    const double y = j * hy;
    for (int i = 0; i < nx; ++i) {
      const double x = i * hx;
      prob.u0(Index(j) * nx + i) = 256.0 * x * x * y * y * (1.0 - x) *
                                   (1.0 - x) * (1.0 - y) * (1.0 - y);
    }
  }
  prob.t_end = 0.5;
  return prob;
}

std::vector<GalleryMatrix> dense_gallery() {
  std::vector<GalleryMatrix> out;
  Rng rng(0x5eedful);

  auto scaled_to = [](Matrix A, double target) {
    const double nrm = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    if (nrm > 0.0) A *= target / nrm;
    return A;
  };

  out.push_back({"zero_8", Matrix::Zero(8, 8)});
  out.push_back({"identity_10", Matrix::Identity(10, 10)});

  {
    Matrix J = Matrix::Zero(6, 6);
    for (int i = 0; i < 5; ++i) J(i, i + 1) = 1.0;
    out.push_back({"nilpotent_jordan_6", J});
  }
  {
    Matrix J = Matrix::Zero(12, 12);
    J.diagonal().setConstant(-2.0);
    for (int i = 0; i < 11; ++i) J(i, i + 1) = 1.0;
    out.push_back({"jordan_block_12", J});
  }

  out.push_back({"random_20_halfnorm", scaled_to(rng.matrix(20, 20), 0.5)});
  out.push_back({"random_30_norm2", scaled_to(rng.matrix(30, 30), 2.0)});
  out.push_back({"random_40_norm5", scaled_to(rng.matrix(40, 40), 5.0)});

  {
    Matrix Q = Eigen::HouseholderQR<Matrix>(rng.matrix(24, 24))
                   .householderQ() *
               Matrix::Identity(24, 24);
    Vector lam(24);
    for (int i = 0; i < 24; ++i) lam(i) = -0.1 - 7.9 * i / 23.0;
    out.push_back({"sym_negdef_24", Q * lam.asDiagonal() * Q.transpose()});
  }
  {
    Matrix S = rng.matrix(16, 16);
    S = 0.5 * (S + S.transpose()).eval();
    out.push_back({"sym_indef_16", scaled_to(S, 3.0)});
  }
  {
    Matrix S = rng.matrix(20, 20);
    S = 0.5 * (S - S.transpose()).eval();
    out.push_back({"skew_20", scaled_to(S, 6.0)});
  }
  {
    Vector d(20);
    for (int i = 0; i < 20; ++i)
      d(i) = -std::exp(std::log(0.01) +
                       (std::log(8.0) - std::log(0.01)) * i / 19.0);
    out.push_back({"stiff_diag_20", Matrix(d.asDiagonal())});
  }
  {
    Matrix B = Matrix::Zero(16, 16);
    B.diagonal().setConstant(-1.0);
    for (int i = 0; i < 15; ++i) B(i, i + 1) = 4.0;
    out.push_back({"bidiagonal_nonnormal_16", B});
  }
  {
    Matrix T = Matrix(rng.matrix(12, 12).triangularView<Eigen::Upper>());
    out.push_back({"triangular_12", scaled_to(T, 3.0)});
  }
  {
    const double a = 2e10, b = 4e8 / 6.0, c = 200.0 / 3.0;
    Matrix M(3, 3);
    M << 0.0, 1e-8, 0.0, -(a + b), -3.0, a, c, 0.0, -c;
    out.push_back({"mixed_scale_core_1e9", 1e-9 * M});
  }
  out.push_back({"chebyshev_small_6", chebyshev_laplacian(6, 2.0)});
  {
    Matrix Q = Eigen::HouseholderQR<Matrix>(rng.matrix(28, 28))
                   .householderQ() *
               Matrix::Identity(28, 28);
    Vector lam(28);
    for (int i = 0; i < 28; ++i) lam(i) = -5.0 + 4.9 * i / 27.0;
    out.push_back({"normal_spread_28", Q * lam.asDiagonal() * Q.transpose()});
  }
  {
    // similarity with a mildly ill-conditioned basis
    Matrix X = Matrix::Identity(20, 20) + 0.9 * rng.matrix(20, 20) / 4.0;
    Vector lam(20);
    for (int i = 0; i < 20; ++i) lam(i) = -4.0 + 3.8 * i / 19.0;
    Matrix A = X * lam.asDiagonal() * X.inverse();
    out.push_back({"nonnormal_similarity_20", scaled_to(A, 8.0)});
  }
  {
    Matrix S = rng.matrix(18, 18);
    S = (0.5 * (S - S.transpose()) + 0.05 * (S + S.transpose())).eval();
    out.push_back({"skew_perturbed_18", scaled_to(S, 4.0)});
  }
  out.push_back({"rank_one_sym_25", Matrix::Constant(25, 25, 1.0 / 25.0)});
  {
    Matrix P = Matrix::Zero(16, 16);
    for (int i = 0; i < 16; ++i) P(i, (i + 1) % 16) = 1.0;
    out.push_back({"cyclic_shift_16", P});
  }
  return out;
}

}  // namespace phiact
