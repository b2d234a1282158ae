#include "ggnet/lasso.hpp"

#include <cmath>

namespace ggnet {

namespace {

double SoftThreshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

}  // namespace

double LassoObjective(const LassoProblem& problem, const Vector& x) {
  const double r = (problem.response - problem.design * x).norm();
  return r * r + problem.rho * x.cwiseAbs().sum();
}

LassoSolution SolveLasso(const LassoProblem& problem,
                         const LassoOptions& opts) {
  const Matrix& A = problem.design;
  const Vector& b = problem.response;
  if (A.rows() != b.size()) {
    throw std::invalid_argument("SolveLasso: design/response row mismatch");
  }
  if (problem.rho < 0.0) {
    throw std::invalid_argument("SolveLasso: rho must be >= 0");
  }
  RequireFinite(A, "SolveLasso design");

  const Eigen::Index d = A.cols();
  Vector x = Vector::Zero(d);
  if (opts.initial) {
    if (opts.initial->size() != d) {
      throw std::invalid_argument("SolveLasso: warm start size mismatch");
    }
    x = *opts.initial;
  }

  const Vector col_sq = A.colwise().squaredNorm();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (col_sq[j] == 0.0) x[j] = 0.0;  // unidentifiable coordinate
  }

  Vector residual = b - A * x;

  LassoSolution out;
  for (long sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (col_sq[j] == 0.0) continue;
      const double old = x[j];
      // single-coordinate minimizer of ||r - a_j (x_j - old)||^2 + rho|x_j|
      const double z = A.col(j).dot(residual) + col_sq[j] * old;
      const double next = SoftThreshold(z, 0.5 * problem.rho) / col_sq[j];
      if (next != old) {
        residual -= (next - old) * A.col(j);
        x[j] = next;
        max_change = std::max(max_change, std::abs(next - old));
      }
    }
    out.iterations = sweep + 1;
    if (max_change < opts.tolerance) {
      out.converged = true;
      break;
    }
  }

  out.x = x;
  out.residual_l2 = (b - A * x).norm();
  out.objective = out.residual_l2 * out.residual_l2 +
                  problem.rho * x.cwiseAbs().sum();
  return out;
}

std::vector<LassoSolution> RhoPath(const Matrix& design,
                                   const Vector& response,
                                   const std::vector<double>& rhos,
                                   const LassoOptions& opts) {
  for (std::size_t i = 1; i < rhos.size(); ++i) {
    if (!(rhos[i] < rhos[i - 1])) {
      throw std::invalid_argument("RhoPath: rhos must be strictly descending");
    }
  }
  std::vector<LassoSolution> out;
  out.reserve(rhos.size());
  LassoOptions step = opts;
  for (double rho : rhos) {
    LassoSolution sol = SolveLasso({design, response, rho}, step);
    step.initial = sol.x;
    out.push_back(std::move(sol));
  }
  return out;
}

}  // namespace ggnet
