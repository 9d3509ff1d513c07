#ifndef PHIACT_ORACLE_HPP
#define PHIACT_ORACLE_HPP

#include <vector>

#include "phiact/linop.hpp"

namespace phiact {

/// Reference evaluations built on a different algorithm family than the
/// matrix-free evaluator: dense scaling-and-squaring exponentials of
/// augmented matrices, accumulated in extended precision.  Agreement
/// between the two routes is evidence, not tautology.

/// Dense matrix exponential: truncated Taylor (degree 30) on A/2^sigma
/// with 2^sigma chosen so the scaled 1-norm is <= 1/4, one compensated
/// summation pass, then sigma squarings.  Throws if the result is not
/// finite.
Matrix dense_expm(const Matrix& A);

/// Reference value of w = sum_{j=0}^p alpha^j phi_j(tA) v_j, read from
/// [I 0] exp([[tA, Vhat],[0, J_p(0)]]) [v_0; e_p], with alpha^j absorbed
/// into the columns of Vhat = [v_p, .., v_1] before assembly.
Vector reference_w(const Matrix& A, const Matrix& V, double t, double alpha);

/// phi_0(tM) .. phi_jmax(tM) for a small dense M, read off the first
/// block row of one exponential of the block-bidiagonal embedding with
/// identity padding.
std::vector<Matrix> dense_phi(const Matrix& M, double t, int jmax);

/// Closed-form low-rank reference for A = U W^T, W = U M^T:
/// sum_j v_j/j! + U * (t * sum_j phi_{j+1}(tM) (W^T v_j)).
/// U must be orthonormal to 1e-12.
Vector lowrank_reference(const Matrix& U, const Matrix& M, const Matrix& V,
                         double t);

}  // namespace phiact

#endif  // PHIACT_ORACLE_HPP
