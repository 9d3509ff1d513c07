#ifndef PHIACT_INTEGRATOR_HPP
#define PHIACT_INTEGRATOR_HPP

#include <vector>

#include "phiact/phi_block.hpp"
#include "phiact/problems.hpp"

namespace phiact {

/// Stage abscissae of the fourth-order six-stage exponential
/// Runge-Kutta scheme; fixed, no user override.
struct ExpRK4s6Coefficients {
  static constexpr double c2 = 0.5;
  static constexpr double c3 = 0.5;
  static constexpr double c4 = 1.0 / 3.0;
  static constexpr double c5 = 5.0 / 6.0;
  static constexpr double c6 = 1.0 / 3.0;
};

struct StepState {
  double t = 0.0;
  Vector u;
  double h = 0.0;
};

struct StepRecord {
  double t = 0.0;
  RunRecord calls[4];  // one per block-evaluator invocation
};

/// One step of the scheme.  The six stages are grouped into exactly four
/// block-evaluator calls: {U2}, {U3, U4}, {U5, U6}, {u_next}; the two
/// independent stage pairs share one call each via the decoupled
/// (t, alpha, V) interface with alpha_i = c_i.
Vector exprk4s6_step(const ADRProblem& problem, const StepState& state,
                     double tol, const ScalingShift& params,
                     StepRecord* record = nullptr);

struct IntegrateResult {
  Vector u;
  double t = 0.0;
  std::vector<StepRecord> steps;
};

/// Fixed-step integration from t = 0 to t_end.  Aborts with the last
/// valid time if the state leaves the finite range.
IntegrateResult integrate(const ADRProblem& problem, double h, double t_end,
                          double tol, const ScalingShift& params,
                          bool keep_records = true);

}  // namespace phiact

#endif  // PHIACT_INTEGRATOR_HPP
