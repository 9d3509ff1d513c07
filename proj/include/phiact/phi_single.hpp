#ifndef PHIACT_PHI_SINGLE_HPP
#define PHIACT_PHI_SINGLE_HPP

#include <vector>

#include "phiact/linop.hpp"
#include "phiact/params.hpp"

namespace phiact {

inline constexpr int kSeriesCap = 500;
inline constexpr int kRecoveryCap = 300;

/// Per-evaluation telemetry: effective scaling count, adaptive series
/// lengths, and the number of operator-column products consumed.
struct RunRecord {
  long s_effective = 1;
  int series_len_S = 0;
  std::vector<int> series_lens_F;
  long matvecs = 0;
};

/// One evaluation of w = sum_{j=0}^p alpha^j phi_j(t A) v_j.
/// V = [v_0, v_1, .., v_p]; params come from select_parameters on the
/// same operator and may be reused across calls with different t.
struct PhiRequest {
  double t = 1.0;
  double alpha = 1.0;
  Matrix V;
  double tol = -1.0;  // <= 0 means 2^-53
  ScalingShift params;
};

struct PhiResult {
  Vector w;
  Vector exp_v0;  // e^{tA} v_0
  Vector tail;    // sum_{j=1}^p alpha^(j-1) phi_j(tA) v_j
  RunRecord stats;
};

/// Scaled, shifted Taylor evaluation with adaptive termination and
/// s_eff - 1 recovery sweeps.  w = exp_v0 + alpha * tail exactly as
/// assembled.
PhiResult phimv(const LinearOperator& op, const PhiRequest& req);

/// e^{tA} v0 (the p = 0 case).
PhiResult exp_action(const LinearOperator& op, double t, const Vector& v0,
                     double tol, const ScalingShift& params);

/// sum_{j=1}^p phi_j(tA) v_j for V1p = [v_1, .., v_p]; v_0 is absent.
PhiResult phi_tail(const LinearOperator& op, double t, const Matrix& V1p,
                   double tol, const ScalingShift& params);

}  // namespace phiact

#endif  // PHIACT_PHI_SINGLE_HPP
