#include "phiact/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace phiact {

namespace {

// one block-evaluator call for a set of stages sharing the coefficient
// columns; abscissae t_i = c_i * h, weights alpha_i = c_i so the
// c_i-dependent stage scalars ride on the Vandermonde weights
Matrix stage_call(const LinearOperator& op, const Vector& t,
                  const Vector& alpha, const Matrix& V, double tol,
                  const ScalingShift& params, RunRecord* rec) {
  BlockPhiRequest req;
  req.t = t;
  req.alpha = alpha;
  req.V = V;
  req.tol = tol;
  req.params = params;
  BlockPhiResult res = phimv_block(op, req);
  if (rec) *rec = std::move(res.stats);
  return std::move(res.W);
}

}  // namespace

Vector exprk4s6_step(const ADRProblem& problem, const StepState& state,
                     double tol, const ScalingShift& params,
                     StepRecord* record) {
  using C = ExpRK4s6Coefficients;
  const LinearOperator& op = problem.op;
  const Vector& u = state.u;
  const double h = state.h;
  const Index n = u.size();

  const Vector g_n = problem.reaction(u);
  const Vector f_n = op.apply(u) + g_n;
  const Vector hf = h * f_n;

  RunRecord* recs[4] = {nullptr, nullptr, nullptr, nullptr};
  if (record) {
    record->t = state.t;
    for (int i = 0; i < 4; ++i) recs[i] = &record->calls[i];
  }

  // stage 2 alone: U2 = u + phi_1(c2 h A) c2 h f
  Matrix V2(n, 2);
  V2.col(0).setZero();
  V2.col(1) = C::c2 * hf;
  Vector t1(1), a1(1);
  t1 << C::c2 * h;
  a1 << 1.0;
  const Vector u2 = u + stage_call(op, t1, a1, V2, tol, params, recs[0]).col(0);
  const Vector d2 = problem.reaction(u2) - g_n;

  // stages 3 and 4 together, alpha_i = c_i:
  // U_i = u + c_i phi_1(c_i h A) h f + c_i^2 phi_2(c_i h A) h D2 / c2
  Matrix V34(n, 3);
  V34.col(0).setZero();
  V34.col(1) = hf;
  V34.col(2) = (h / C::c2) * d2;
  Vector t34(2), a34(2);
  t34 << C::c3 * h, C::c4 * h;
  a34 << C::c3, C::c4;
  const Matrix U34 = stage_call(op, t34, a34, V34, tol, params, recs[1]);
  const Vector u3 = u + U34.col(0);
  const Vector u4 = u + U34.col(1);
  const Vector d3 = problem.reaction(u3) - g_n;
  const Vector d4 = problem.reaction(u4) - g_n;

  // stages 5 and 6 together
  const double c34 = C::c3 - C::c4;
  Matrix V56(n, 4);
  V56.col(0).setZero();
  V56.col(1) = hf;
  V56.col(2) = (h / c34) * (-(C::c4 / C::c3) * d3 + (C::c3 / C::c4) * d4);
  V56.col(3) = (2.0 * h / c34) * (d3 / C::c3 - d4 / C::c4);
  Vector t56(2), a56(2);
  t56 << C::c5 * h, C::c6 * h;
  a56 << C::c5, C::c6;
  const Matrix U56 = stage_call(op, t56, a56, V56, tol, params, recs[2]);
  const Vector u5 = u + U56.col(0);
  const Vector u6 = u + U56.col(1);
  const Vector d5 = problem.reaction(u5) - g_n;
  const Vector d6 = problem.reaction(u6) - g_n;

  // the update, alpha = 1
  const double c56 = C::c5 - C::c6;
  Matrix Vn(n, 4);
  Vn.col(0).setZero();
  Vn.col(1) = hf;
  Vn.col(2) = (h / c56) * (-(C::c6 / C::c5) * d5 + (C::c5 / C::c6) * d6);
  Vn.col(3) = (2.0 * h / c56) * (d5 / C::c5 - d6 / C::c6);
  Vector tn(1), an(1);
  tn << h;
  an << 1.0;
  return u + stage_call(op, tn, an, Vn, tol, params, recs[3]).col(0);
}

IntegrateResult integrate(const ADRProblem& problem, double h, double t_end,
                          double tol, const ScalingShift& params,
                          bool keep_records) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
  const double span = t_end;
  const long n_steps = std::lround(span / h);
  if (n_steps < 1 || n_steps > 1000000)
    throw std::invalid_argument("integrate: step count out of range");
  if (std::abs(n_steps * h - span) > 1e-9 * std::max(1.0, span))
    throw std::invalid_argument("integrate: t_end is not a multiple of h");

  IntegrateResult out;
  out.u = problem.u0;
  out.t = 0.0;
  if (keep_records) out.steps.reserve(n_steps);

  StepState state;
  state.h = h;
  for (long step = 0; step < n_steps; ++step) {
    state.t = step * h;
    state.u = out.u;
    StepRecord rec;
    Vector next = exprk4s6_step(problem, state, tol, params,
                                keep_records ? &rec : nullptr);
    if (!next.allFinite())
      throw std::runtime_error("integrate: state left the finite range at t = " +
                               std::to_string(out.t));
    out.u = std::move(next);
    out.t = (step + 1) * h;
    if (keep_records) out.steps.push_back(std::move(rec));
  }
  return out;
}

}  // namespace phiact
