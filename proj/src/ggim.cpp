#include "ggnet/ggim.hpp"

#include <cmath>

#include "ggnet/l1min.hpp"

namespace ggnet {

namespace {

Matrix InvertSpd(const Matrix& Sigma, const char* what) {
  Eigen::LDLT<Matrix> ldlt(Sigma);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw std::runtime_error(std::string(what) +
                             ": Sigma is not positive definite");
  }
  return ldlt.solve(Matrix::Identity(Sigma.rows(), Sigma.cols()));
}

void FillRecovery(GgimEstimate& est) {
  if (!ValidateStability(est.L_hat)) {
    est.recovered = false;
    return;
  }
  auto [sigma, kappa] = RecoverSigmaKappa(est.L_hat);
  const Matrix K = est.L_hat * sigma - Matrix::Identity(sigma.rows(),
                                                        sigma.cols());
  est.sigma_hat = std::move(sigma);
  est.kappa_hat = std::move(kappa);
  est.kappa_symmetric_defect =
      NormLinfElementwise(0.5 * (K + K.transpose()));
  est.recovered = true;
}

}  // namespace

Matrix FamilyMember(const Matrix& Sigma, const SkewSymmetric& kappa) {
  RequireFinite(Sigma, "FamilyMember");
  const auto p = Sigma.rows();
  const Matrix P = InvertSpd(Sigma, "FamilyMember");
  return (Matrix::Identity(p, p) + kappa.Realize()) * P;
}

std::pair<SkewSymmetric, Matrix> OptimizeKappa(const Matrix& Sigma) {
  const int p = static_cast<int>(Sigma.rows());
  const Matrix P = InvertSpd(Sigma, "OptimizeKappa");
  const int m = p * (p - 1) / 2;

  // ||(I + kappa) P||_1 = ||vec(P) + G u||_1 with u the strict upper
  // triangle of kappa; column (a,b) of G is vec((E_ab - E_ba) P).
  Matrix G = Matrix::Zero(p * p, m);
  int col = 0;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b, ++col) {
      for (int j = 0; j < p; ++j) {
        G(VecIndex(p, a, j), col) = P(b, j);
        G(VecIndex(p, b, j), col) = -P(a, j);
      }
    }
  }

  const L1MinResult lp = MinimizeL1Linear(Vectorize(P), G);
  SkewSymmetric kappa(p);
  col = 0;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b, ++col) kappa.entry(a, b) = lp.u[col];
  }
  return {kappa, FamilyMember(Sigma, kappa)};
}

FullSystem BuildFullSystem(const Matrix& S) {
  RequireFinite(S, "BuildFullSystem");
  const int p = static_cast<int>(S.rows());
  FullSystem sys;
  sys.p = p;
  const int rows = (p * p + p) / 2;
  sys.H = Matrix::Zero(rows, p * p);
  sys.f = Vector::Zero(rows);
  int r = 0;
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j, ++r) {
      // sum_m L_{i,m} S_{m,j} + sum_m L_{j,m} S_{m,i} = 2 [i == j]
      for (int m = 0; m < p; ++m) {
        sys.H(r, VecIndex(p, i, m)) += S(m, j);
        sys.H(r, VecIndex(p, j, m)) += S(m, i);
      }
      if (i == j) sys.f[r] = 2.0;
    }
  }
  return sys;
}

std::pair<Matrix, SkewSymmetric> RecoverSigmaKappa(const Matrix& L_hat) {
  const Matrix sigma = SolveLyapunov(L_hat);
  const Matrix K =
      L_hat * sigma - Matrix::Identity(L_hat.rows(), L_hat.cols());
  return {sigma, SkewSymmetric::FromSkewPart(K)};
}

GgimEstimate LearnGgim(const Matrix& S, double rho, const LassoOptions& opts) {
  const FullSystem sys = BuildFullSystem(S);
  GgimEstimate est;
  est.rho = rho;
  est.lasso = SolveLasso({sys.H, sys.f, rho}, opts);
  est.L_hat = Unvectorize(est.lasso.x, sys.p, sys.p);
  est.xi = est.lasso.residual_l2;
  FillRecovery(est);
  return est;
}

ReducedSystem BuildReducedSystem(const Matrix& S) {
  RequireFinite(S, "BuildReducedSystem");
  const int p = static_cast<int>(S.rows());
  for (int i = 0; i < p; ++i) {
    if (S(i, i) <= 0.0) {
      throw std::runtime_error("BuildReducedSystem: nonpositive diagonal in S");
    }
  }
  ReducedSystem sys;
  sys.p = p;
  const int rows = (p * p - p) / 2;
  sys.H_tilde = Matrix::Zero(rows, p * p - p);
  sys.beta = Vector::Zero(rows);
  int r = 0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k, ++r) {
      for (int i = 0; i < p; ++i) {
        if (i != j) {
          sys.H_tilde(r, OffDiagIndex(p, j, i)) +=
              S(j, k) * S(j, i) / S(j, j) - S(k, i);
        }
        if (i != k) {
          sys.H_tilde(r, OffDiagIndex(p, k, i)) +=
              S(j, k) * S(k, i) / S(k, k) - S(j, i);
        }
      }
      sys.beta[r] = S(j, k) / S(j, j) + S(j, k) / S(k, k);
    }
  }
  return sys;
}

double DefaultDelta(const Matrix& L_offdiag) {
  const int p = static_cast<int>(L_offdiag.rows());
  double nu_r = 0.0, nu_c = 0.0;
  for (int i = 0; i < p; ++i) {
    const double row = L_offdiag.row(i).cwiseAbs().sum() -
                       std::abs(L_offdiag(i, i));
    const double col = L_offdiag.col(i).cwiseAbs().sum() -
                       std::abs(L_offdiag(i, i));
    nu_r = std::max(nu_r, row);
    nu_c = std::max(nu_c, col);
  }
  return 1e-6 * (1.0 + nu_r + nu_c);
}

DiagonalCompletion CompleteDiagonal(const Matrix& L_offdiag, const Matrix& S,
                                    double delta) {
  const int p = static_cast<int>(L_offdiag.rows());
  if (!L_offdiag.allFinite()) {
    throw std::invalid_argument("CompleteDiagonal: non-finite zeta");
  }
  double nu_r = 0.0, nu_c = 0.0;
  for (int i = 0; i < p; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < p; ++j) {
      if (j == i) continue;
      row += std::abs(L_offdiag(i, j));
      col += std::abs(L_offdiag(j, i));
    }
    nu_r = std::max(nu_r, row);
    nu_c = std::max(nu_c, col);
  }
  DiagonalCompletion out;
  out.diag = Vector::Zero(p);
  out.epsilon = Vector::Zero(p);
  for (int i = 0; i < p; ++i) {
    double base = 1.0;
    for (int l = 0; l < p; ++l) {
      if (l != i) base -= L_offdiag(i, l) * S(i, l);
    }
    base /= S(i, i);
    out.epsilon[i] = std::max(0.0, nu_r + nu_c + delta - base);
    out.diag[i] = base + out.epsilon[i];
  }
  return out;
}

GgimEstimate LearnGgimBounded(const Matrix& S, double rho, double delta,
                              const LassoOptions& opts) {
  const int p = static_cast<int>(S.rows());
  const ReducedSystem sys = BuildReducedSystem(S);

  GgimEstimate est;
  est.rho = rho;
  est.lasso = SolveLasso({sys.H_tilde, sys.beta, rho}, opts);

  Matrix L = Matrix::Zero(p, p);
  for (int m = 0; m < p; ++m) {
    for (int i = 0; i < p; ++i) {
      if (i != m) L(i, m) = est.lasso.x[OffDiagIndex(p, i, m)];
    }
  }
  if (delta < 0.0) delta = DefaultDelta(L);
  const DiagonalCompletion completion = CompleteDiagonal(L, S, delta);
  L.diagonal() = completion.diag;
  est.L_hat = std::move(L);
  est.epsilon = completion.epsilon;

  const FullSystem full = BuildFullSystem(S);
  est.xi = (full.f - full.H * Vectorize(est.L_hat)).norm();
  est.alpha = DiagDominanceAlpha(LyapunovKronecker(est.L_hat));
  FillRecovery(est);
  return est;
}

BoundResult ComputeBound(const GgimEstimate& estimate, const Matrix& S) {
  if (!estimate.alpha) {
    throw std::runtime_error("ComputeBound: estimate has no dominance margin");
  }
  if (!estimate.recovered) {
    throw std::runtime_error("ComputeBound: estimate has no recovered Sigma");
  }
  BoundResult out;
  out.xi = estimate.xi;
  out.alpha = *estimate.alpha;
  out.bound = out.xi / out.alpha;
  out.lhs = NormLinfElementwise(estimate.sigma_hat - S);
  out.holds = out.lhs <= out.bound + 1e-12 * (1.0 + out.bound);
  return out;
}

double CorollaryBound(const BoundResult& bound, double lambda,
                      const Matrix* sigma_tilde, const Matrix* sigma_hat,
                      bool* holds) {
  if (lambda < 0.0) {
    throw std::invalid_argument("CorollaryBound: lambda must be >= 0");
  }
  const double value = bound.bound + lambda;
  if (holds) *holds = true;
  if (sigma_tilde && sigma_hat && holds) {
    *holds = NormLinfElementwise(*sigma_tilde - *sigma_hat) <=
             value + 1e-12 * (1.0 + value);
  }
  return value;
}

}  // namespace ggnet
