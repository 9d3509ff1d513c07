#ifndef PHIACT_PHI_BLOCK_HPP
#define PHIACT_PHI_BLOCK_HPP

#include <functional>

#include "phiact/phi_single.hpp"

namespace phiact {

/// Simultaneous evaluation of w_i = sum_j alpha_i^j phi_j(t_i A) v_j for
/// i = 1..r.  One V block is shared across all abscissae; the roles of
/// the t_i (inside the phi arguments) and the alpha_i (outside weights)
/// are decoupled.
struct BlockPhiRequest {
  Vector t;
  Vector alpha;
  Matrix V;
  double tol = -1.0;  // <= 0 means 2^-53
  ScalingShift params;
};

struct BlockPhiResult {
  Matrix W;  // column i is w_i
  RunRecord stats;
};

/// Block variant of the scaling-and-recovering evaluation, with diagonal
/// T = diag(t), Delta = diag(alpha) and Kronecker-structured updates.
/// All r combinations share the series and the recovery sweeps.
BlockPhiResult phimv_block(const LinearOperator& op,
                           const BlockPhiRequest& req);

/// Power-series coefficients a_{ij} of the functions g_i combined by
/// block_series_direct; i indexes the function, j the power of (t_k A).
using SeriesCoeffs = std::function<double(int i, int j)>;

/// Coefficients encoding g_i = phi_i, i.e. a_{ij} = 1/(i+j)!.
SeriesCoeffs phi_series_coeffs();

/// Direct evaluation of G = sum_j A^j V D_j Gamma T^j with
/// D_j = diag(a_{0j},..,a_{pj}) and the Vandermonde weight matrix
/// Gamma = [alpha_k^i].  Converges only while the t_i A stay inside the
/// series' comfort zone; used as an internal cross-check and for the
/// fixed-k mode (zero every column of V except v_k).
Matrix block_series_direct(const LinearOperator& op,
                           const BlockPhiRequest& req,
                           const SeriesCoeffs& coeffs);

}  // namespace phiact

#endif  // PHIACT_PHI_BLOCK_HPP
