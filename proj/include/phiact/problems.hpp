#ifndef PHIACT_PROBLEMS_HPP
#define PHIACT_PROBLEMS_HPP

#include <string>
#include <vector>

#include "phiact/linop.hpp"

namespace phiact {

/// Deterministic builders for the test operators.  Repeated construction
/// is bit-identical.

/// Spectral collocation discretization of the Laplacian on [0, L] with
/// homogeneous Dirichlet boundaries: Chebyshev differentiation matrix,
/// diagonal fixed by negative row sums, squared, first/last rows and
/// columns removed.  Dense, highly nonnormal, (N-1) x (N-1).
Matrix chebyshev_laplacian(int N, double L);

/// First r columns of the orthonormal DCT-II matrix,
/// U(i,k) = sqrt(2/n) a_k cos(pi (i+1/2) k / n), a_0 = 1/sqrt(2).
Matrix dct_basis(Index n, Index r);

/// Low-rank operator family A = U W^T with W = U M^T; the spectrum and
/// normality are controlled entirely by the small core M.
struct LowRankCore {
  std::string name;
  Matrix core;
  Index n = 0;
  int p = 0;
};

LowRankCore lowrank_core_m1();  // skew core, n = 2e4, p = 3
LowRankCore lowrank_core_m2();  // nonnormal triangular core, n = 4e4, p = 4
LowRankCore lowrank_core_m3();  // mixed-scale core, n = 5e4, p = 2

struct LowRankOperator {
  LinearOperator op;
  Matrix U;
  Matrix W;
};

/// Matrix-free x -> U (W^T x) with O(nr) work; U and W are returned for
/// the closed-form reference path.
LowRankOperator lowrank_operator(const LowRankCore& core);

/// 2D advection-diffusion-reaction semidiscretization on [0,1]^2:
/// u_t = eps*Lap(u) - alpha*(u_x + u_y) + gamma*u(u-1/2)(1-u), with
/// homogeneous Neumann edges at x=0 / y=0 (mirror ghosts, nodes kept as
/// unknowns) and homogeneous Dirichlet edges at x=1 / y=1 (eliminated).
/// Second-order central differences on a uniform grid; n = Nx*Ny.
struct ADRProblem {
  int nx = 0;
  int ny = 0;
  double eps = 1e-3;
  double alpha_adv = -0.5;
  double gamma = 1000.0;
  LinearOperator op;
  Vector u0;
  double t_end = 0.5;

  /// Pointwise reaction gamma * u (u - 1/2) (1 - u).
  Vector reaction(const Vector& u) const;
};

ADRProblem adr_build(int nx, int ny, double eps = 1e-3,
                     double alpha_adv = -0.5, double gamma = 1000.0);

/// Curated dense gallery (n <= 40): random dense at several norms,
/// symmetric definite/indefinite, nilpotent, skew, Jordan-like
/// nonnormal, stiff diagonal, and scaled mixed-scale cores.
struct GalleryMatrix {
  std::string name;
  Matrix A;
};

std::vector<GalleryMatrix> dense_gallery();

}  // namespace phiact

#endif  // PHIACT_PROBLEMS_HPP
