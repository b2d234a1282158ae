#include "ggnet/ggcem.hpp"

#include <cmath>

#include "ggnet/ggim.hpp"

namespace ggnet {

Matrix ConditionalExpectationMatrix(const Matrix& Sigma, const Matrix& L,
                                    int j, int k) {
  const int p = static_cast<int>(Sigma.rows());
  if (j == k || j < 0 || k < 0 || j >= p || k >= p) {
    throw std::invalid_argument(
        "ConditionalExpectationMatrix: need distinct j, k");
  }
  const int a[2] = {j, k};
  Matrix out(2, 2);
  if (p == 2) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) out(r, c) = L(a[r], a[c]);
    }
    return out;
  }

  std::vector<int> b;
  for (int i = 0; i < p; ++i) {
    if (i != j && i != k) b.push_back(i);
  }
  const int q = static_cast<int>(b.size());

  Eigen::LDLT<Matrix> sigma_ldlt(Sigma);
  if (sigma_ldlt.info() != Eigen::Success || !sigma_ldlt.isPositive()) {
    throw std::runtime_error(
        "ConditionalExpectationMatrix: Sigma is not positive definite");
  }
  const Matrix P = sigma_ldlt.solve(Matrix::Identity(p, p));

  Matrix Sab(2, q), Sbb(q, q);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < q; ++c) Sab(r, c) = Sigma(a[r], b[c]);
  }
  for (int r = 0; r < q; ++r) {
    for (int c = 0; c < q; ++c) Sbb(r, c) = Sigma(b[r], b[c]);
  }
  Eigen::LDLT<Matrix> bb(Sbb);
  if (bb.info() != Eigen::Success) {
    throw std::runtime_error(
        "ConditionalExpectationMatrix: singular Sigma_{b,b}");
  }
  const Matrix gain = Sab * bb.solve(Matrix::Identity(q, q));

  for (int c = 0; c < 2; ++c) {
    Vector pb(q), lb(q);
    for (int r = 0; r < q; ++r) {
      pb[r] = P(b[r], a[c]);
      lb[r] = L(b[r], a[c]);
    }
    const Vector corr = gain * (pb - lb);
    for (int r = 0; r < 2; ++r) out(r, c) = L(a[r], a[c]) + corr[r];
  }
  return out;
}

double VerifyBalance(const Matrix& Sigma, const Matrix& L) {
  const int p = static_cast<int>(Sigma.rows());
  const Matrix lyap_res = L * Sigma + Sigma * L.transpose() -
                          2.0 * Matrix::Identity(p, p);
  if (NormLinfElementwise(lyap_res) > 1e-6) {
    throw std::runtime_error(
        "VerifyBalance: L does not solve the Lyapunov equation for Sigma");
  }
  double worst = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      const ConditionalStats cs = ConditionalCovariance(Sigma, j, k);
      const Matrix pe = ConditionalExpectationMatrix(Sigma, L, j, k);
      const double sjk2 = cs.sigma_jk * cs.sigma_jk;
      const double lhs = pe(0, 1) * (sjk2 / cs.sigma_j - cs.sigma_k) +
                         pe(1, 0) * (sjk2 / cs.sigma_k - cs.sigma_j);
      const double rhs =
          cs.sigma_jk / cs.sigma_j + cs.sigma_jk / cs.sigma_k;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

GgcemSystem BuildGgcemSystem(const Matrix& S) {
  RequireFinite(S, "BuildGgcemSystem");
  const int p = static_cast<int>(S.rows());
  GgcemSystem sys;
  sys.p = p;
  const int rows = (p * p - p) / 2;
  sys.W = Matrix::Zero(rows, p * p - p);
  sys.d = Vector::Zero(rows);
  int r = 0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k, ++r) {
      const ConditionalStats cs = ConditionalCovariance(S, j, k);
      const double sjk2 = cs.sigma_jk * cs.sigma_jk;
      sys.W(r, OffDiagIndex(p, j, k)) = cs.sigma_k - sjk2 / cs.sigma_j;
      sys.W(r, OffDiagIndex(p, k, j)) = cs.sigma_j - sjk2 / cs.sigma_k;
      sys.d[r] = cs.sigma_jk / cs.sigma_j + cs.sigma_jk / cs.sigma_k;
    }
  }
  return sys;
}

GgcemEstimate LearnGgcem(const Matrix& S, double rho,
                         const LassoOptions& opts) {
  const GgcemSystem sys = BuildGgcemSystem(S);
  GgcemEstimate est;
  est.rho = rho;
  est.lasso = SolveLasso({sys.W, sys.d, rho}, opts);
  est.residual = est.lasso.residual_l2;
  est.P_hat = Matrix::Zero(sys.p, sys.p);
  for (int m = 0; m < sys.p; ++m) {
    for (int i = 0; i < sys.p; ++i) {
      if (i != m) est.P_hat(i, m) = est.lasso.x[OffDiagIndex(sys.p, i, m)];
    }
  }
  return est;
}

ExtendedGgcemSystem BuildExtendedSystem(const Matrix& S) {
  RequireFinite(S, "BuildExtendedSystem");
  const int p = static_cast<int>(S.rows());
  ExtendedGgcemSystem sys;
  sys.p = p;
  const int pairs = (p * p - p) / 2;
  sys.W_ext = Matrix::Zero(3 * pairs, 4 * pairs);
  sys.d_ext = Vector::Zero(3 * pairs);
  int q = 0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k, ++q) {
      const ConditionalStats cs = ConditionalCovariance(S, j, k);
      ExtendedGgcemSystem::PairColumns cols{j,      k,         4 * q,
                                            4 * q + 1, 4 * q + 2, 4 * q + 3};
      const int r = 3 * q;
      // diagonal components of the 2x2 balance identity
      sys.W_ext(r, cols.aux_j) = 2.0 * cs.sigma_j;
      sys.W_ext(r, cols.off_jk) = 2.0 * cs.sigma_jk;
      sys.d_ext[r] = 2.0;
      sys.W_ext(r + 1, cols.aux_k) = 2.0 * cs.sigma_k;
      sys.W_ext(r + 1, cols.off_kj) = 2.0 * cs.sigma_jk;
      sys.d_ext[r + 1] = 2.0;
      // off-diagonal component
      sys.W_ext(r + 2, cols.aux_j) = cs.sigma_jk;
      sys.W_ext(r + 2, cols.aux_k) = cs.sigma_jk;
      sys.W_ext(r + 2, cols.off_jk) = cs.sigma_k;
      sys.W_ext(r + 2, cols.off_kj) = cs.sigma_j;
      sys.columns.push_back(cols);
    }
  }
  return sys;
}

GgcemEstimate LearnGgcemExtended(const Matrix& S, double rho,
                                 const LassoOptions& opts) {
  const ExtendedGgcemSystem sys = BuildExtendedSystem(S);
  GgcemEstimate est;
  est.rho = rho;
  est.lasso = SolveLasso({sys.W_ext, sys.d_ext, rho}, opts);
  est.residual = est.lasso.residual_l2;
  est.P_hat = Matrix::Zero(sys.p, sys.p);
  for (const auto& cols : sys.columns) {
    est.P_hat(cols.j, cols.k) = est.lasso.x[cols.off_jk];
    est.P_hat(cols.k, cols.j) = est.lasso.x[cols.off_kj];
  }
  return est;
}

}  // namespace ggnet
