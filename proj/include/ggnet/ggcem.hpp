#pragma once

#include <vector>

#include "ggnet/lasso.hpp"
#include "ggnet/linalg.hpp"

// Gaussian graphical conditional expectation models: pairwise balance
// equations between conditional expectations of precision entries and the
// sparse learners built from them.
namespace ggnet {

// Pairwise system W y = d, one equation per unordered pair; each row has at
// most two nonzero coefficients (on P~_{j,k} and P~_{k,j}).
struct GgcemSystem {
  Matrix W;  // (p^2-p)/2 x (p^2-p)
  Vector d;
  int p = 0;
};

// Three equations per pair from the 2x2 balance identity
// P~_{a,a} Sigma_{a|b} + Sigma_{a|b} P~_{a,a}^T = 2I, with the two diagonal
// expectations kept as pair-local auxiliary unknowns.
struct ExtendedGgcemSystem {
  Matrix W_ext;  // 3(p^2-p)/2 x 2(p^2-p)
  Vector d_ext;
  int p = 0;
  // per-pair column offsets: {aux_j, aux_k, off_jk, off_kj}
  struct PairColumns {
    int j, k, aux_j, aux_k, off_jk, off_kj;
  };
  std::vector<PairColumns> columns;
};

struct GgcemEstimate {
  Matrix P_hat;  // zero diagonal
  double rho = 0.0;
  double residual = 0.0;
  LassoSolution lasso;
};

// Conditional expectation of the 2x2 precision submatrix of the pair {j,k}
// given the remaining columns:
//   P~_{a,i} = L_{a,i} + Sigma_{a,b} Sigma_{b,b}^{-1} (P_{b,i} - L_{b,i}),
// with P = Sigma^{-1}. For p = 2 the conditioning is empty and the block is
// L_{a,a} itself.
Matrix ConditionalExpectationMatrix(const Matrix& Sigma, const Matrix& L,
                                    int j, int k);

// Max absolute violation of the pairwise balance identity over all pairs.
// Requires L to solve the Lyapunov equation for Sigma (checked).
double VerifyBalance(const Matrix& Sigma, const Matrix& L);

GgcemSystem BuildGgcemSystem(const Matrix& S);

GgcemEstimate LearnGgcem(const Matrix& S, double rho,
                         const LassoOptions& opts = {});

ExtendedGgcemSystem BuildExtendedSystem(const Matrix& S);

// Solves the extended system and discards the diagonal auxiliaries.
GgcemEstimate LearnGgcemExtended(const Matrix& S, double rho,
                                 const LassoOptions& opts = {});

}  // namespace ggnet
