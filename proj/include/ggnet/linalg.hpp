#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <stdexcept>

// Dense linear-algebra kernels shared by the model learners: Lyapunov
// solving, conditional Gaussian statistics, the orthonormal basis of the
// subspace orthogonal to the all-ones vector, and a stochastic simulation
// oracle for stationary diffusion processes on graphs.
namespace ggnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Skew-symmetric p x p matrix stored by its strict upper triangle, so
// K^T = -K holds exactly by construction.
class SkewSymmetric {
 public:
  explicit SkewSymmetric(int dim);
  // Extracts the skew part (K - K^T)/2 of an arbitrary square matrix.
  static SkewSymmetric FromSkewPart(const Matrix& K);

  int dim() const { return dim_; }
  double& entry(int i, int j);           // i < j
  double entry(int i, int j) const;      // i < j
  Matrix Realize() const;                // full p x p matrix

 private:
  int dim_;
  Vector upper_;  // row-major strict upper triangle
  int index(int i, int j) const;
};

// Conditional second moments of the pair (j, k) given the remaining
// variables: Sigma_{j|c}, Sigma_{k|c}, Sigma_{jk|c}.
struct ConditionalStats {
  int j = 0;
  int k = 0;
  double sigma_j = 0.0;
  double sigma_k = 0.0;
  double sigma_jk = 0.0;
};

// Minimum real part of the spectrum required for a Laplacian estimate to
// count as stable.
inline constexpr double kStabilityTol = 1e-10;

Matrix Kronecker(const Matrix& A, const Matrix& B);

// Column-major vectorization and its inverse.
Vector Vectorize(const Matrix& M);
Matrix Unvectorize(const Vector& v, int rows, int cols);

// True iff every eigenvalue of L has real part above kStabilityTol.
bool ValidateStability(const Matrix& L);

// Unique symmetric solution of L*Sigma + Sigma*L^T = 2I, via a dense solve
// of the p^2-dimensional Kronecker system. Throws if L is unstable.
Matrix SolveLyapunov(const Matrix& L);

// The Kronecker operator of the Lyapunov map X -> L X + X L^T under
// column-major vectorization: I (x) L + L (x) I.
Matrix LyapunovKronecker(const Matrix& L);

// 2x2 Schur complement of {j,k} against the remaining variables. For p = 2
// the conditioning set is empty and the unconditional entries are returned.
ConditionalStats ConditionalCovariance(const Matrix& S, int j, int k);

// Helmert-style (p-1) x p matrix whose rows are an orthonormal basis of the
// subspace orthogonal to the all-ones vector: Q1 = 0, QQ^T = I, Q^TQ = P_n.
Matrix BuildQBasis(int p);

double NormL1Elementwise(const Matrix& M);
double NormLinfElementwise(const Matrix& M);

// Strict diagonal dominance margin min_i(|A_ii| - sum_{j != i}|A_ij|);
// nullopt when the matrix is not strictly diagonally dominant.
std::optional<double> DiagDominanceAlpha(const Matrix& A);

struct SimulationOptions {
  double sigma = std::sqrt(2.0);  // noise level, sigma^2 = 2 by default
  double dt = 1e-3;
  std::int64_t burn_in_steps = -1;  // negative: choose from the spectrum
  std::int64_t sample_steps = 100000;
  std::int64_t sample_stride = 10;
  std::uint64_t seed = 0;
};

// Euler-Maruyama integration of dx = -Lx dt + sigma dW from x0 = 0.
// Returns the empirical covariance of the post-burn-in samples.
// Deterministic for a fixed seed. Throws on state overflow (dt too large).
Matrix SimulateDiffusion(const Matrix& L, const SimulationOptions& opts);

// Same integrator, returning the strided post-burn-in samples themselves
// as a sample_steps x p matrix.
Matrix SimulateDiffusionSamples(const Matrix& L, const SimulationOptions& opts);

// Throws std::invalid_argument when M has a NaN/Inf entry.
void RequireFinite(const Matrix& M, const char* what);

}  // namespace ggnet
