#include "ggnet/semidef.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "ggnet/ggim.hpp"

namespace ggnet {

ReducedCovariance ReduceCovariance(const Matrix& S, const Matrix& Q) {
  RequireFinite(S, "ReduceCovariance");
  const int p = static_cast<int>(S.rows());
  if (Q.rows() != p - 1 || Q.cols() != p) {
    throw std::invalid_argument("ReduceCovariance: Q must be (p-1) x p");
  }
  ReducedCovariance out;
  out.p = p;
  out.Q = Q;
  Matrix bar = Q * S * Q.transpose();
  out.sigma_bar = 0.5 * (bar + bar.transpose());
  const double scale = 1.0 + NormLinfElementwise(S);
  out.ones_in_kernel =
      (S * Vector::Ones(p)).cwiseAbs().maxCoeff() < 1e-8 * scale;

  Eigen::SelfAdjointEigenSolver<Matrix> es(out.sigma_bar);
  if (es.info() != Eigen::Success ||
      es.eigenvalues().minCoeff() <= 1e-12 * scale) {
    throw std::runtime_error(
        "ReduceCovariance: reduced covariance is singular (process not "
        "connected)");
  }
  return out;
}

Matrix FamilyMemberSemidef(const Matrix& Sigma, const Matrix& Psi,
                           const SkewSymmetric& kappa) {
  const int p = static_cast<int>(Sigma.rows());
  const double tol = 1e-8 * (1.0 + NormLinfElementwise(Psi));
  if (NormLinfElementwise(Psi * Psi - Psi) > tol ||
      (Psi * Vector::Ones(p)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(
        "FamilyMemberSemidef: Psi is not a projection annihilating 1");
  }
  const Matrix pinv = Sigma.completeOrthogonalDecomposition().pseudoInverse();
  return Psi * (Matrix::Identity(p, p) + kappa.Realize()) * pinv;
}

SemidefSystem BuildSemidefSystem(const Matrix& S) {
  const int p = static_cast<int>(S.rows());
  SemidefSystem sys;
  sys.reduced = ReduceCovariance(S, BuildQBasis(p));
  const Matrix& Q = sys.reduced.Q;
  const Matrix QtS = Q.transpose() * sys.reduced.sigma_bar;  // p x (p-1)

  // Upper triangle of the reduced equation plus p row-sum rows. The reduced
  // equation alone is blind to L -> L + u 1^T + 1 w^T; every family member
  // has zero row sums, so L 1 = 0 pins that freedom down.
  const int reduced_rows = p * (p - 1) / 2;
  sys.A = Matrix::Zero(reduced_rows + p, p * p);
  sys.rhs = Vector::Zero(reduced_rows + p);
  int r = 0;
  for (int a = 0; a < p - 1; ++a) {
    for (int b = a; b < p - 1; ++b, ++r) {
      for (int u = 0; u < p; ++u) {
        for (int v = 0; v < p; ++v) {
          sys.A(r, VecIndex(p, u, v)) +=
              Q(a, u) * QtS(v, b) + Q(b, u) * QtS(v, a);
        }
      }
      if (a == b) sys.rhs[r] = 2.0;
    }
  }
  for (int u = 0; u < p; ++u) {
    for (int v = 0; v < p; ++v) {
      sys.A(reduced_rows + u, VecIndex(p, u, v)) = 1.0;
    }
  }
  return sys;
}

SemidefGgimEstimate LearnGgimSemidef(const Matrix& S, double rho,
                                     const LassoOptions& opts) {
  const SemidefSystem sys = BuildSemidefSystem(S);
  const int p = sys.reduced.p;
  SemidefGgimEstimate est;
  est.rho = rho;
  LassoOptions local = opts;
  if (!local.initial) {
    // warm-started continuation keeps the iterate out of the null space of
    // the underdetermined system, which plain descent at a tiny rho cannot
    // leave within a realistic sweep budget
    const double rho_max =
        2.0 * (sys.A.transpose() * sys.rhs).cwiseAbs().maxCoeff();
    if (rho < rho_max) {
      const int steps = 30;
      Vector warm;
      for (int i = 0; i < steps; ++i) {
        const double r =
            rho_max * std::pow(rho / rho_max,
                               static_cast<double>(i) / (steps - 1));
        LassoOptions stage = opts;
        if (i > 0) stage.initial = warm;
        warm = SolveLasso({sys.A, sys.rhs, r}, stage).x;
      }
      local.initial = warm;
    }
  }
  est.lasso = SolveLasso({sys.A, sys.rhs, rho}, local);
  est.L_hat = Unvectorize(est.lasso.x, p, p);
  const int reduced_rows = p * (p - 1) / 2;
  est.reduced_residual =
      (sys.A.topRows(reduced_rows) * est.lasso.x - sys.rhs.head(reduced_rows))
          .norm();
  try {
    auto [psi, kappa] = RecoverPsiKappa(est.L_hat, S);
    est.psi_hat = std::move(psi);
    est.kappa_hat = std::move(kappa);
    const Matrix kb = sys.reduced.Q * est.L_hat * sys.reduced.Q.transpose() *
                          sys.reduced.sigma_bar -
                      Matrix::Identity(p - 1, p - 1);
    est.kappa_skew_defect =
        NormLinfElementwise(0.5 * (kb + kb.transpose()));
    est.recovered = true;
  } catch (const std::exception&) {
    est.recovered = false;
  }
  return est;
}

std::pair<Matrix, SkewSymmetric> RecoverPsiKappa(const Matrix& L_hat,
                                                 const Matrix& S) {
  const int p = static_cast<int>(L_hat.rows());
  const double scale = 1.0 + NormLinfElementwise(L_hat);
  if ((L_hat * Vector::Ones(p)).cwiseAbs().maxCoeff() > 1e-5 * scale) {
    throw std::runtime_error(
        "RecoverPsiKappa: row sums far from zero, not a Laplacian");
  }

  // left null direction of L_hat
  Eigen::JacobiSVD<Matrix> svd(L_hat, Eigen::ComputeFullU);
  const Vector v = svd.matrixU().col(p - 1);
  const double v1 = v.sum();
  if (std::abs(v1) < 1e-8) {
    throw std::runtime_error(
        "RecoverPsiKappa: left null vector orthogonal to 1");
  }
  const Matrix Psi =
      Matrix::Identity(p, p) - Vector::Ones(p) * v.transpose() / v1;

  const Matrix Q = BuildQBasis(p);
  const Matrix sigma_bar = Q * S * Q.transpose();
  const Matrix kappa_bar = Q * L_hat * Q.transpose() * sigma_bar -
                           Matrix::Identity(p - 1, p - 1);
  return {Psi, SkewSymmetric::FromSkewPart(Q.transpose() * kappa_bar * Q)};
}

}  // namespace ggnet
