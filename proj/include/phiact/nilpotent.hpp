#ifndef PHIACT_NILPOTENT_HPP
#define PHIACT_NILPOTENT_HPP

#include "phiact/linop.hpp"

namespace phiact {

/// The (p+1) x (p+1) coefficient matrix [0] (+) J_p(0): zero except for
/// ones on the superdiagonal of the trailing p x p block.  J^(p+1) = 0
/// exactly, so every exponential below is a finite sum.
struct NilpotentCoeffMatrix {
  int p = 0;
  Matrix representation;

  explicit NilpotentCoeffMatrix(int order);
};

/// exp(c*J), evaluated as the exact finite sum sum_{k<=p} (cJ)^k / k!.
Matrix exp_scaled(const NilpotentCoeffMatrix& J, double c);

/// exp(J (x) Delta / s) for diagonal Delta; the Kronecker factor keeps
/// the nilpotency, so the sum still terminates at power p.
Matrix kron_exp(const NilpotentCoeffMatrix& J, const Vector& delta_diag,
                double s);

/// J (x) Delta - xi * (I_{p+1} (x) T) for diagonal Delta and T of equal
/// size.  Upper triangular with diagonal entries -xi*t_i.
Matrix kron_shifted(const NilpotentCoeffMatrix& J, const Vector& delta_diag,
                    const Vector& t_diag, double xi);

}  // namespace phiact

#endif  // PHIACT_NILPOTENT_HPP
