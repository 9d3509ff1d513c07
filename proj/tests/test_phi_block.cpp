#include <doctest.h>

#include "phiact/oracle.hpp"
#include "phiact/phi_block.hpp"
#include "phiact/rng.hpp"
#include "test_util.hpp"

using namespace phiact;

namespace {

ScalingShift params_for(const Matrix& A, double tol = -1.0) {
  return select_parameters(dense_operator(A), kDefaultDegree,
                           tol > 0 ? tol : default_tolerance());
}

}  // namespace

TEST_CASE("r = 1 collapses to the single-combination path") {
  Rng rng(151);
  Matrix A = rng.matrix(7, 7);
  A *= 3.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  const Matrix V = rng.matrix(7, 4);
  const double tol = 1e-12;
  const ScalingShift sel = params_for(A, tol);
  const LinearOperator op = dense_operator(A);

  BlockPhiRequest breq;
  breq.t = Vector::Constant(1, 0.8);
  breq.alpha = Vector::Constant(1, 1.3);
  breq.V = V;
  breq.tol = tol;
  breq.params = sel;
  const BlockPhiResult block = phimv_block(op, breq);

  PhiRequest sreq{0.8, 1.3, V, tol, sel};
  const PhiResult single = phimv(op, sreq);
  CHECK(testutil::rel_err(Vector(block.W.col(0)), single.w) <= 10.0 * tol);
}

TEST_CASE("degenerate nodes give identical columns") {
  Rng rng(157);
  const Matrix A = rng.matrix(6, 6);
  const Matrix V = rng.matrix(6, 3);
  BlockPhiRequest req;
  req.t = Vector::Constant(3, 1.0);
  req.alpha = Vector::Constant(3, 0.4);
  req.V = V;
  req.params = params_for(A);
  const BlockPhiResult res = phimv_block(dense_operator(A), req);
  CHECK((res.W.col(0) - res.W.col(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((res.W.col(1) - res.W.col(2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("three abscissae with alpha = t match the augmented oracle") {
  Rng rng(163);
  Matrix A = rng.matrix(6, 6);
  A *= 2.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  const Matrix V = rng.matrix(6, 5);  // p = 4
  BlockPhiRequest req;
  req.t.resize(3);
  req.t << 0.1, 0.5, 1.0;
  req.alpha = req.t;
  req.V = V;
  req.params = params_for(A);
  const BlockPhiResult res = phimv_block(dense_operator(A), req);
  for (int i = 0; i < 3; ++i) {
    const Vector want = reference_w(A, V, req.t(i), req.alpha(i));
    CHECK(testutil::rel_err(Vector(res.W.col(i)), want) < 1e-12);
  }
}

TEST_CASE("block-single consistency on random instances") {
  Rng rng(167);
  for (int trial = 0; trial < 8; ++trial) {
    const Index n = 5 + (trial % 4);
    Matrix A = rng.matrix(n, n);
    A *= (0.5 + trial) / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const int p = 1 + trial % 5;
    const Index r = 1 + trial % 4;
    const Matrix V = rng.matrix(n, p + 1);
    Vector t(r), alpha(r);
    for (Index i = 0; i < r; ++i) {
      t(i) = 0.1 + rng.uniform();
      alpha(i) = -1.0 + 2.0 * rng.uniform();
    }
    const double tol = 1e-12;
    const ScalingShift sel = params_for(A, tol);
    const LinearOperator op = dense_operator(A);
    BlockPhiRequest req{t, alpha, V, tol, sel};
    const BlockPhiResult block = phimv_block(op, req);
    for (Index i = 0; i < r; ++i) {
      PhiRequest sreq{t(i), alpha(i), V, tol, sel};
      const Vector w = phimv(op, sreq).w;
      CHECK(testutil::rel_err(Vector(block.W.col(i)), w) <= 1e-11);
    }
  }
}

TEST_CASE("joint permutation of (t, alpha) permutes columns bit-identically") {
  Rng rng(173);
  const Matrix A = rng.matrix(6, 6);
  const Matrix V = rng.matrix(6, 3);
  const ScalingShift sel = params_for(A);
  const LinearOperator op = dense_operator(A);

  BlockPhiRequest req;
  req.t.resize(3);
  req.t << 0.2, 0.7, 1.0;
  req.alpha.resize(3);
  req.alpha << 1.0, -0.5, 2.0;
  req.V = V;
  req.params = sel;
  const Matrix W = phimv_block(op, req).W;

  BlockPhiRequest perm = req;
  perm.t << 1.0, 0.2, 0.7;
  perm.alpha << 2.0, 1.0, -0.5;
  const Matrix Wp = phimv_block(op, perm).W;

  CHECK((W.col(0) - Wp.col(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((W.col(1) - Wp.col(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((W.col(2) - Wp.col(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fixed-k mode matches phi_k(t_i A) v_k from the oracle") {
  Rng rng(179);
  Matrix A = rng.matrix(8, 8);
  A *= 1.5 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  const int p = 3, k = 2;
  Matrix V = Matrix::Zero(8, p + 1);
  V.col(k) = rng.vector(8);
  BlockPhiRequest req;
  req.t.resize(3);
  req.t << 0.3, 0.8, 1.2;
  req.alpha = Vector::Ones(3);
  req.V = V;
  req.params = params_for(A);
  const BlockPhiResult res = phimv_block(dense_operator(A), req);
  for (int i = 0; i < 3; ++i) {
    const auto phis = dense_phi(A, req.t(i), k);
    const Vector want = phis[k] * V.col(k);
    CHECK(testutil::rel_err(Vector(res.W.col(i)), want) <= 1e-11);
  }
}

TEST_CASE("zero weight inside a block request") {
  Rng rng(227);
  Matrix A = rng.matrix(6, 6);
  A *= 2.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
  const Matrix V = rng.matrix(6, 3);
  BlockPhiRequest req;
  req.t.resize(2);
  req.t << 0.8, 1.1;
  req.alpha.resize(2);
  req.alpha << 0.0, 0.7;  // alpha = 0 collapses column 0 to e^{tA} v0
  req.params = params_for(A);
  req.V = V;
  const BlockPhiResult res = phimv_block(dense_operator(A), req);
  const Vector want0 = reference_w(A, V.col(0), 0.8, 1.0);
  const Vector want1 = reference_w(A, V, 1.1, 0.7);
  CHECK(testutil::rel_err(Vector(res.W.col(0)), want0) < 1e-12);
  CHECK(testutil::rel_err(Vector(res.W.col(1)), want1) < 1e-12);
}

TEST_CASE("r = 0 rejected") {
  const Matrix A = Matrix::Identity(3, 3);
  BlockPhiRequest req;
  req.t.resize(0);
  req.alpha.resize(0);
  req.V = Matrix::Ones(3, 1);
  req.params = params_for(A);
  CHECK_THROWS(phimv_block(dense_operator(A), req));
}

TEST_CASE("block_series_direct") {
  SUBCASE("A = 0 gives column k = sum alpha_k^i v_i / i!") {
    Rng rng(181);
    const Matrix V = rng.matrix(5, 3);
    BlockPhiRequest req;
    req.t.resize(2);
    req.t << 0.5, 2.0;
    req.alpha.resize(2);
    req.alpha << 1.0, -2.0;
    req.V = V;
    req.params = ScalingShift{};
    const Matrix G = block_series_direct(dense_operator(Matrix::Zero(5, 5)),
                                         req, phi_series_coeffs());
    for (int kcol = 0; kcol < 2; ++kcol) {
      const double a = req.alpha(kcol);
      const Vector want = V.col(0) + a * V.col(1) + a * a * V.col(2) / 2.0;
      CHECK(testutil::rel_err(Vector(G.col(kcol)), want) < 1e-14);
    }
  }
  SUBCASE("p = 0 exponential columns match the dense oracle") {
    Rng rng(191);
    Matrix A = rng.matrix(5, 5);
    A *= 1.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const Vector v0 = rng.vector(5);
    BlockPhiRequest req;
    req.t.resize(2);
    req.t << 0.4, 1.0;
    req.alpha = Vector::Ones(2);
    req.V = v0;
    req.params = ScalingShift{};
    const Matrix G =
        block_series_direct(dense_operator(A), req, phi_series_coeffs());
    for (int i = 0; i < 2; ++i) {
      const Vector want = reference_w(A, v0, req.t(i), 1.0);
      CHECK(testutil::rel_err(Vector(G.col(i)), want) < 1e-13);
    }
  }
  SUBCASE("equal alphas collapse to the single-alpha case") {
    Rng rng(193);
    Matrix A = rng.matrix(6, 6);
    A *= 0.8 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const Matrix V = rng.matrix(6, 3);
    BlockPhiRequest req;
    req.t = Vector::Constant(3, 0.7);
    req.alpha = Vector::Constant(3, 1.4);
    req.V = V;
    req.params = ScalingShift{};
    const Matrix G =
        block_series_direct(dense_operator(A), req, phi_series_coeffs());
    CHECK((G.col(0) - G.col(1)).cwiseAbs().maxCoeff() == 0.0);
    const Vector want = reference_w(A, V, 0.7, 1.4);
    CHECK(testutil::rel_err(Vector(G.col(0)), want) < 1e-13);
  }
  SUBCASE("slowly converging series is reported, not looped") {
    Rng rng(199);
    Matrix A = rng.matrix(6, 6);
    A *= 400.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    BlockPhiRequest req;
    req.t = Vector::Constant(1, 1.0);
    req.alpha = Vector::Ones(1);
    req.V = rng.matrix(6, 2);
    req.params = ScalingShift{};
    CHECK_THROWS_AS(
        block_series_direct(dense_operator(A), req, phi_series_coeffs()),
        std::runtime_error);
  }

  SUBCASE("cross-checks the scaled evaluator") {
    Rng rng(197);
    Matrix A = rng.matrix(7, 7);
    A *= 2.0 / Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
    const Matrix V = rng.matrix(7, 4);
    BlockPhiRequest req;
    req.t.resize(2);
    req.t << 0.5, 1.0;
    req.alpha.resize(2);
    req.alpha << 1.0, 0.5;
    req.V = V;
    req.tol = 1e-13;
    req.params = params_for(A, 1e-13);
    const Matrix G =
        block_series_direct(dense_operator(A), req, phi_series_coeffs());
    const Matrix W = phimv_block(dense_operator(A), req).W;
    CHECK(testutil::rel_err(G, W) < 1e-11);
  }
}
