#pragma once

#include <utility>

#include "ggnet/lasso.hpp"
#include "ggnet/linalg.hpp"

// GGIM learning for rank-deficient covariances: the Lyapunov equation is
// restricted to the subspace orthogonal to the all-ones vector through the
// Q-basis reduction.
namespace ggnet {

struct ReducedCovariance {
  Matrix sigma_bar;  // (p-1) x (p-1), Q S Q^T
  Matrix Q;          // (p-1) x p
  int p = 0;
  bool ones_in_kernel = false;  // |S 1|_inf was small on construction
};

struct SemidefGgimEstimate {
  Matrix L_hat;
  double rho = 0.0;
  double reduced_residual = 0.0;  // l2 residual of the reduced system
  bool recovered = false;
  Matrix psi_hat;               // valid when recovered
  SkewSymmetric kappa_hat{1};   // valid when recovered
  double kappa_skew_defect = 0.0;
  LassoSolution lasso;
};

// Linear system over vec(L) expressing
//   (Q L Q^T) Sigma_bar + Sigma_bar (Q L Q^T)^T = 2 I_{p-1},
// one row per upper-triangle entry (diagonal included), followed by p
// row-sum equations L 1 = 0 that remove the rank-one shift freedom.
struct SemidefSystem {
  Matrix A;  // (p(p-1)/2 + p) x p^2
  Vector rhs;
  ReducedCovariance reduced;
};

// Sigma_bar = Q S Q^T. Throws when the reduction is numerically singular
// (disconnected process); a kernel different from span{1} is flagged,
// not rejected.
ReducedCovariance ReduceCovariance(const Matrix& S, const Matrix& Q);

// L = Psi (I + kappa) Sigma^+ with Sigma^+ the pseudo-inverse. Psi must be
// a projection annihilating the all-ones vector (Psi^2 = Psi, Psi 1 = 0).
Matrix FamilyMemberSemidef(const Matrix& Sigma, const Matrix& Psi,
                           const SkewSymmetric& kappa);

SemidefSystem BuildSemidefSystem(const Matrix& S);

SemidefGgimEstimate LearnGgimSemidef(const Matrix& S, double rho,
                                     const LassoOptions& opts = {});

// Psi as the projection onto 1-perp along the left null direction of L_hat,
// kappa from the reduced-space identity. Refuses inputs whose row sums are
// far from zero (not a Laplacian).
std::pair<Matrix, SkewSymmetric> RecoverPsiKappa(const Matrix& L_hat,
                                                 const Matrix& S);

}  // namespace ggnet
