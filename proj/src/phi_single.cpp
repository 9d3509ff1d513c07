#include "phiact/phi_single.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phiact/nilpotent.hpp"

namespace phiact {

namespace {

void check_request(const LinearOperator& op, const PhiRequest& req) {
  if (req.V.cols() < 1)
    throw std::invalid_argument("phimv: V must have at least one column");
  if (req.V.rows() != op.dim())
    throw std::invalid_argument("phimv: V row count does not match operator");
  if (!req.V.allFinite())
    throw std::invalid_argument("phimv: V has non-finite entries");
  if (!std::isfinite(req.t) || !std::isfinite(req.alpha))
    throw std::invalid_argument("phimv: t and alpha must be finite");
}

[[noreturn]] void diverged(const char* where, int k) {
  throw std::runtime_error(std::string("phimv: ") + where +
                           " produced a non-finite term at index " +
                           std::to_string(k));
}

[[noreturn]] void no_convergence(const char* where, int cap) {
  throw std::runtime_error(std::string("phimv: ") + where +
                           " did not converge within " + std::to_string(cap) +
                           " terms");
}

}  // namespace

PhiResult phimv(const LinearOperator& op, const PhiRequest& req) {
  check_request(op, req);
  const double tol = req.tol > 0.0 ? req.tol : default_tolerance();
  const int p = int(req.V.cols()) - 1;
  const double t = req.t;
  const double alpha = req.alpha;
  const double xi = req.params.xi;

  RunRecord rec;
  const long s = std::max<long>(1, long(std::ceil(std::abs(t) * req.params.s)));
  rec.s_effective = s;
  const double mu = std::exp(t * xi / double(s));
  if (!std::isfinite(mu))
    throw std::runtime_error("phimv: shift undo factor e^{t xi / s} overflows");

  const NilpotentCoeffMatrix J(p);
  const Matrix Jexp = exp_scaled(J, alpha / double(s));
  Matrix Jiter = (alpha * J.representation -
                  t * xi * Matrix::Identity(p + 1, p + 1)) /
                 double(s);

  // column permutation [v_0, v_p, v_{p-1}, .., v_1], scaled by mu/s
  Matrix Vw(req.V.rows(), p + 1);
  Vw.col(0) = req.V.col(0);
  for (int j = 1; j <= p; ++j) Vw.col(j) = req.V.col(p + 1 - j);
  Vw *= mu / double(s);

  // truncated Taylor of the block series S = sum_k D_k / k!
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
    Vw = Vw * Jiter;
    D = (t / double(s)) * shifted_apply(op, xi, D) + Vw;
    rec.matvecs += p + 1;
    c2 = inf_norm(D) / sigma;
    if (!std::isfinite(c2)) diverged("series", k);
    S += D / sigma;
  }
  rec.series_len_S = k;

  // track the first and last columns only; the first is promoted to
  // e^{tA/s} v_0 through the theorem identity e^B v = B phi_1(B) v + v
  const Index n = op.dim();
  const int ncols = p == 0 ? 1 : 2;
  Matrix F(n, ncols);
  F.col(0) = S.col(0);
  if (p > 0) F.col(1) = S.col(p);
  F.col(0) = t * op.apply(F.col(0)) + req.V.col(0);
  rec.matvecs += 1;

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
      F = (t / (double(s) * kk)) * shifted_apply(op, xi, F);
      rec.matvecs += ncols;
      d2 = inf_norm(F);
      if (!std::isfinite(d2)) diverged("recovery sweep", kk);
      E += F;
    }
    rec.series_lens_F.push_back(kk);
    E *= mu;  // undo spectral shift
    Sadv = Sadv * Jexp;
    if (p > 0) {
      F.col(1) = E.col(1) + Sadv.col(p);
    }
    F.col(0) = E.col(0);
  }

  PhiResult out;
  out.exp_v0 = F.col(0);
  out.tail = p > 0 ? Vector(F.col(1)) : Vector(Vector::Zero(n));
  out.w = out.exp_v0 + alpha * out.tail;
  out.stats = std::move(rec);
  return out;
}

PhiResult exp_action(const LinearOperator& op, double t, const Vector& v0,
                     double tol, const ScalingShift& params) {
  PhiRequest req;
  req.t = t;
  req.alpha = 1.0;
  req.V = v0;
  req.tol = tol;
  req.params = params;
  return phimv(op, req);
}

PhiResult phi_tail(const LinearOperator& op, double t, const Matrix& V1p,
                   double tol, const ScalingShift& params) {
  PhiRequest req;
  req.t = t;
  req.alpha = 1.0;
  req.V.resize(V1p.rows(), V1p.cols() + 1);
  req.V.col(0).setZero();
  req.V.rightCols(V1p.cols()) = V1p;
  req.tol = tol;
  req.params = params;
  return phimv(op, req);
}

}  // namespace phiact
