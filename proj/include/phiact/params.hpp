#ifndef PHIACT_PARAMS_HPP
#define PHIACT_PARAMS_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "phiact/linop.hpp"

namespace phiact {

inline constexpr int kDefaultDegree = 61;
inline constexpr double kDefaultGuardFraction = 0.8;
inline constexpr double kScalingFloor = 9.5367431640625e-7;  // 2^-20
inline double default_tolerance() { return std::ldexp(1.0, -53); }

/// Guarded power basis v, Av, A^2 v, ... used by the shift objective.
///
/// columns holds [V_0 .. V_m] after normalization: column j carries
/// A^j v / s0^j.  logs[k-1] = log ||A^k v||_2 for the accepted indices
/// k = 1..r, taken before normalization.  log_binom[j] = log C(m, j).
struct PowerBasis {
  Matrix columns;
  std::vector<double> logs;
  std::vector<double> log_binom;
  int r = 0;
  int m = 0;
  double s0 = 1.0;
};

/// Scaling parameter s and optimal spectral shift xi, plus the
/// provenance needed to audit them (preliminary scale s0, objective
/// minimum f_min, Taylor degree m, accepted power count r).
struct ScalingShift {
  double s = 1.0;
  double xi = 0.0;
  double s0 = 1.0;
  double f_min = 0.0;
  int m = kDefaultDegree;
  int r = 0;
};

/// Builds the power basis with over/underflow guards, derives the
/// preliminary scale s0 from a geometric mean of the last accepted
/// growth ratios, then normalizes and extends the basis to degree m.
///
/// The starting vector is (1,..,1)/sqrt(n), replaced by a fixed-seed
/// pseudorandom unit vector if A annihilates it exactly.  A non-finite
/// first product rejects the operator.
PowerBasis build_power_basis(const LinearOperator& op, int m = kDefaultDegree,
                             double delta = kDefaultGuardFraction);

/// f(xi) = || V (b .* p(xi)) ||_2^(1/m) with z = -xi/s0,
/// p = (z^m, .., z, 1), b the binomial coefficients; equals
/// ||(A - xi I)^m v||^(1/m) / s0 up to roundoff.
double objective(const PowerBasis& basis, double xi);

/// Derivative-free scalar minimization of the objective over
/// [-sqrt(n) s0, +sqrt(n) s0]; the result never exceeds f(0) or the
/// endpoint values.
std::pair<double, double> minimize_shift(const PowerBasis& basis);

/// Scaling parameter for a given shift: s = s0 * f / (tol m!)^(1/m) in
/// log space, clamped below by kScalingFloor.  The binomial-basis
/// objective cancels catastrophically near annihilating shifts, so f is
/// the larger of the basis objective and one direct renormalized power
/// sweep ||(A - xi I)^m v||^(1/m) / s0; that keeps the defining
/// inequality s^-m nu(xi)/m! <= tol intact against the true nu.
ScalingShift parameters_for_shift(const LinearOperator& op,
                                  const PowerBasis& basis, double xi,
                                  double tol);

/// Full a-priori parameter selection: guarded basis, shift line search,
/// and the scaling that enforces the target tolerance.
ScalingShift select_parameters(const LinearOperator& op,
                               int m = kDefaultDegree, double tol = -1.0,
                               double delta = kDefaultGuardFraction);

}  // namespace phiact

#endif  // PHIACT_PARAMS_HPP
