#include "phiact/phi_block.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "phiact/nilpotent.hpp"

namespace phiact {

namespace {

void check_request(const LinearOperator& op, const BlockPhiRequest& req) {
  if (req.t.size() == 0)
    throw std::invalid_argument("phimv_block: at least one abscissa required");
  if (req.alpha.size() != req.t.size())
    throw std::invalid_argument("phimv_block: t and alpha lengths differ");
  if (req.V.cols() < 1)
    throw std::invalid_argument("phimv_block: V must have at least one column");
  if (req.V.rows() != op.dim())
    throw std::invalid_argument(
        "phimv_block: V row count does not match operator");
  if (!req.t.allFinite() || !req.alpha.allFinite() || !req.V.allFinite())
    throw std::invalid_argument("phimv_block: inputs must be finite");
}

[[noreturn]] void diverged(const char* where, int k) {
  throw std::runtime_error(std::string("phimv_block: ") + where +
                           " produced a non-finite term at index " +
                           std::to_string(k));
}

[[noreturn]] void no_convergence(const char* where, int cap) {
  throw std::runtime_error(std::string("phimv_block: ") + where +
                           " did not converge within " + std::to_string(cap) +
                           " terms");
}

// column-wise diagonal scaling, X <- X * diag(d) on an n x r block
void scale_cols(Eigen::Ref<Matrix> X, const Vector& d) {
  for (Index i = 0; i < d.size(); ++i) X.col(i) *= d(i);
}

}  // namespace

BlockPhiResult phimv_block(const LinearOperator& op,
                           const BlockPhiRequest& req) {
  check_request(op, req);
  const double tol = req.tol > 0.0 ? req.tol : default_tolerance();
  const Index r = req.t.size();
  const int p = int(req.V.cols()) - 1;
  const double xi = req.params.xi;
  const Index n = op.dim();

  RunRecord rec;
  const long s = std::max<long>(
      1, long(std::ceil(req.params.s * req.t.cwiseAbs().maxCoeff())));
  rec.s_effective = s;

  Vector mu(r);
  for (Index i = 0; i < r; ++i) {
    mu(i) = std::exp(xi * req.t(i) / double(s));
    if (!std::isfinite(mu(i)))
      throw std::runtime_error(
          "phimv_block: shift undo factor e^{t xi / s} overflows");
  }

  const NilpotentCoeffMatrix J(p);
  const Matrix Jexp = kron_exp(J, req.alpha, double(s));
  // Kronecker form of the single-combination coefficient
  // (alpha J - t xi I)/s; block-diagonal over the abscissae
  const Matrix Kiter = kron_shifted(J, req.alpha, req.t, xi) / double(s);

  // expand the permuted V to n x (p+1)r: block j holds v_perm(j) times
  // mu_i / s in copy i
  Matrix Vw(n, (p + 1) * r);
  for (int j = 0; j <= p; ++j) {
    const Index src = j == 0 ? 0 : p + 1 - j;
    for (Index i = 0; i < r; ++i)
      Vw.col(j * r + i) = req.V.col(src) * (mu(i) / double(s));
  }

  const Vector t_over_s = req.t / double(s);

  Matrix S = Vw;
  Matrix D = Vw;
  int k = 1;
  double sigma = 1.0;
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = inf_norm(D);
  while (c1 + c2 > tol * inf_norm(S)) {
    if (k >= kSeriesCap) no_convergence("series", kSeriesCap);
    ++k;
    c1 = c2;
    sigma *= k;
    Vw = Vw * Kiter;
    D = shifted_apply(op, xi, D);
    rec.matvecs += (p + 1) * r;
    for (int j = 0; j <= p; ++j) scale_cols(D.middleCols(j * r, r), t_over_s);
    D += Vw;
    c2 = inf_norm(D) / sigma;
    if (!std::isfinite(c2)) diverged("series", k);
    S += D / sigma;
  }
  rec.series_len_S = k;

  // first and last n x r block columns; the first block is promoted to
  // e^{t_i A / s} v_0 column by column
  const Index fcols = p == 0 ? r : 2 * r;
  Matrix F(n, fcols);
  F.leftCols(r) = S.leftCols(r);
  if (p > 0) F.rightCols(r) = S.middleCols(p * r, r);
  {
    Matrix AF = op.apply(F.leftCols(r));
    rec.matvecs += r;
    scale_cols(AF, req.t);
    F.leftCols(r) = AF + req.V.col(0) * Vector::Ones(r).transpose();
  }

  Matrix Sadv = std::move(S);
  for (long sweep = 1; sweep < s; ++sweep) {
    Matrix E = F;
    int kk = 0;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = inf_norm(F);
    while (d1 + d2 > tol * inf_norm(E)) {
      if (kk >= kRecoveryCap) no_convergence("recovery sweep", kRecoveryCap);
      ++kk;
      d1 = d2;
      F = shifted_apply(op, xi, F) / double(kk);
      rec.matvecs += fcols;
      scale_cols(F.leftCols(r), t_over_s);
      if (p > 0) scale_cols(F.rightCols(r), t_over_s);
      d2 = inf_norm(F);
      if (!std::isfinite(d2)) diverged("recovery sweep", kk);
      E += F;
    }
    rec.series_lens_F.push_back(kk);
    scale_cols(E.leftCols(r), mu);  // undo spectral shift
    if (p > 0) scale_cols(E.rightCols(r), mu);
    Sadv = Sadv * Jexp;
    if (p > 0) F.rightCols(r) = E.rightCols(r) + Sadv.middleCols(p * r, r);
    F.leftCols(r) = E.leftCols(r);
  }

  BlockPhiResult out;
  out.W = F.leftCols(r);
  if (p > 0) {
    Matrix tail = F.rightCols(r);
    scale_cols(tail, req.alpha);
    out.W += tail;
  }
  out.stats = std::move(rec);
  return out;
}

SeriesCoeffs phi_series_coeffs() {
  // a_{ij} = 1/(i+j)!, built on an exact rounding chain
  auto inv_factorials = std::make_shared<std::vector<double>>();
  inv_factorials->push_back(1.0);
  return [inv_factorials](int i, int j) -> double {
    const int idx = i + j;
    auto& table = *inv_factorials;
    while (int(table.size()) <= idx)
      table.push_back(table.back() / double(table.size()));
    return table[idx];
  };
}

Matrix block_series_direct(const LinearOperator& op,
                           const BlockPhiRequest& req,
                           const SeriesCoeffs& coeffs) {
  check_request(op, req);
  const double tol = req.tol > 0.0 ? req.tol : default_tolerance();
  const Index r = req.t.size();
  const int p = int(req.V.cols()) - 1;

  // Gamma = [alpha_k^i], i = 0..p down the rows
  Matrix gamma(p + 1, r);
  for (Index kcol = 0; kcol < r; ++kcol) {
    double power = 1.0;
    for (int i = 0; i <= p; ++i) {
      gamma(i, kcol) = power;
      power *= req.alpha(kcol);
    }
  }

  Matrix X = req.V;           // A^j V
  Vector tpow = Vector::Ones(r);  // t_k^j
  Matrix G = Matrix::Zero(op.dim(), r);
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = 0.0;
  for (int j = 0;; ++j) {
    if (j >= kSeriesCap) no_convergence("direct series", kSeriesCap);
    if (j > 0) {
      X = op.apply(X);
      tpow = tpow.cwiseProduct(req.t);
    }
    Vector dj(p + 1);
    for (int i = 0; i <= p; ++i) dj(i) = coeffs(i, j);
    Matrix term = X * (dj.asDiagonal() * gamma);
    scale_cols(term, tpow);
    G += term;
    c1 = c2;
    c2 = inf_norm(term);
    if (!std::isfinite(c2)) diverged("direct series", j);
    if (j >= 1 && c1 + c2 <= tol * inf_norm(G)) break;
  }
  return G;
}

}  // namespace phiact
