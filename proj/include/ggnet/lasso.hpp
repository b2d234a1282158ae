#pragma once

#include <vector>

#include "ggnet/linalg.hpp"

namespace ggnet {

// l1-penalized least squares: minimize ||b - A x||_2^2 + rho ||x||_1.
// No 1/(2m) factor on the quadratic term, so rho values are directly
// comparable across problem sizes.
struct LassoProblem {
  Matrix design;    // m x d
  Vector response;  // m
  double rho = 0.0;
};

struct LassoOptions {
  double tolerance = 1e-10;  // max coordinate change per sweep
  long max_sweeps = 100000;
  std::optional<Vector> initial;  // warm start
};

struct LassoSolution {
  Vector x;
  double objective = 0.0;
  long iterations = 0;  // completed sweeps
  bool converged = false;
  double residual_l2 = 0.0;  // ||response - design * x||_2
};

double LassoObjective(const LassoProblem& problem, const Vector& x);

// Cyclic coordinate descent with exact soft-threshold updates. Deterministic
// for fixed inputs; the objective is non-increasing across sweeps.
// Coordinates whose design column is all-zero stay at 0.
LassoSolution SolveLasso(const LassoProblem& problem,
                         const LassoOptions& opts = {});

// Solves the same design/response at each rho of a strictly descending
// sequence, warm-starting every solve from the previous solution.
std::vector<LassoSolution> RhoPath(const Matrix& design,
                                   const Vector& response,
                                   const std::vector<double>& rhos,
                                   const LassoOptions& opts = {});

}  // namespace ggnet
