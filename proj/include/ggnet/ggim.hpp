#pragma once

#include <utility>

#include "ggnet/lasso.hpp"
#include "ggnet/linalg.hpp"

// Gaussian graphical interaction models: the skew-symmetric family of
// steady-state equivalent Laplacians, the sparse LASSO learner, and the
// bounded-covariance variant with its dominance-margin error bound.
namespace ggnet {

// Linear system H z = f equivalent to L S + S L^T = 2I, one equation per
// unordered index pair (diagonal included), z = vec(L) column-major.
struct FullSystem {
  Matrix H;  // (p^2+p)/2 x p^2
  Vector f;  // 2 on diagonal equations, 0 otherwise
  int p = 0;
};

// Off-diagonal system H~ zeta = beta with the diagonal of L eliminated
// through the unpenalized diagonal identity L_ii = (1 - sum L_il S_il)/S_ii.
struct ReducedSystem {
  Matrix H_tilde;  // (p^2-p)/2 x (p^2-p)
  Vector beta;
  int p = 0;
};

struct GgimEstimate {
  Matrix L_hat;
  double rho = 0.0;
  double xi = 0.0;  // ||f - H vec(L_hat)||_2 against the full system
  bool recovered = false;  // Sigma/kappa recovery succeeded
  Matrix sigma_hat;                      // valid when recovered
  SkewSymmetric kappa_hat{1};            // valid when recovered
  double kappa_symmetric_defect = 0.0;   // ||sym part of L Sigma - I||_inf
  std::optional<double> alpha;  // dominance margin (bounded variant)
  std::optional<Vector> epsilon;  // diagonal lift (bounded variant)
  LassoSolution lasso;
};

struct BoundResult {
  double xi = 0.0;
  double alpha = 0.0;
  double bound = 0.0;  // xi / alpha
  double lhs = 0.0;    // ||sigma_hat - S||_inf
  bool holds = false;
};

// L(kappa) = (I + kappa) Sigma^{-1}; every member solves the Lyapunov
// equation for Sigma exactly.
Matrix FamilyMember(const Matrix& Sigma, const SkewSymmetric& kappa);

// Sparsest family member: minimizes ||(I + kappa) Sigma^{-1}||_1 over
// skew-symmetric kappa, solved exactly as a linear program.
std::pair<SkewSymmetric, Matrix> OptimizeKappa(const Matrix& Sigma);

FullSystem BuildFullSystem(const Matrix& S);

// Flat index of L_{i,m} in vec(L); shared by all system builders.
inline int VecIndex(int p, int i, int m) { return i + p * m; }

// Flat index of the off-diagonal entry (i,m) in a column-major ordering of
// the off-diagonal entries (diagonal removed).
inline int OffDiagIndex(int p, int i, int m) {
  return m * (p - 1) + i - (i > m ? 1 : 0);
}

// LASSO on the full system; reshapes the solution into L_hat and attempts
// Sigma/kappa recovery.
GgimEstimate LearnGgim(const Matrix& S, double rho,
                       const LassoOptions& opts = {});

// Sigma_hat from the Lyapunov solve and kappa_hat as the skew part of
// L_hat Sigma_hat - I. Throws when L_hat is unstable.
std::pair<Matrix, SkewSymmetric> RecoverSigmaKappa(const Matrix& L_hat);

ReducedSystem BuildReducedSystem(const Matrix& S);

// Diagonal completion for the bounded variant: base values from the
// unpenalized diagonal identity plus the minimal lift epsilon_i making
// every diagonal exceed nu_r + nu_c + delta, which makes the Lyapunov
// Kronecker operator strictly diagonally dominant.
struct DiagonalCompletion {
  Vector diag;
  Vector epsilon;
};
DiagonalCompletion CompleteDiagonal(const Matrix& L_offdiag, const Matrix& S,
                                    double delta);

// Default delta used when the caller passes a negative value.
double DefaultDelta(const Matrix& L_offdiag);

GgimEstimate LearnGgimBounded(const Matrix& S, double rho, double delta = -1.0,
                              const LassoOptions& opts = {});

// Both sides of the dominance-margin bound ||sigma_hat - S||_inf <= xi/alpha.
BoundResult ComputeBound(const GgimEstimate& estimate, const Matrix& S);

// xi/alpha + lambda; when an external covariance estimate is supplied, also
// checks ||sigma_tilde - sigma_hat||_inf against it.
double CorollaryBound(const BoundResult& bound, double lambda,
                      const Matrix* sigma_tilde = nullptr,
                      const Matrix* sigma_hat = nullptr,
                      bool* holds = nullptr);

}  // namespace ggnet
