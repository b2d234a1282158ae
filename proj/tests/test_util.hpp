#pragma once

#include <random>

#include "ggnet/linalg.hpp"

// Shared random-instance generators for the test suites. All draws are
// seeded explicitly so every test is reproducible.
namespace ggnet::testing {

inline Matrix RandomMatrix(int rows, int cols, std::mt19937_64& rng,
                           double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) M(i, j) = dist(rng);
  }
  return M;
}

inline Matrix RandomSpd(int p, std::mt19937_64& rng, double ridge = 0.5) {
  const Matrix B = RandomMatrix(p, p, rng);
  return B * B.transpose() / p + ridge * Matrix::Identity(p, p);
}

// Random matrix with eigenvalues shifted into the right half plane.
inline Matrix RandomStable(int p, std::mt19937_64& rng) {
  Matrix L = RandomMatrix(p, p, rng);
  Eigen::EigenSolver<Matrix> es(L, false);
  const double shift = es.eigenvalues().real().minCoeff();
  L += (0.5 - std::min(shift, 0.0)) * Matrix::Identity(p, p);
  return L;
}

inline SkewSymmetric RandomSkew(int p, std::mt19937_64& rng,
                                double scale = 0.5) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  SkewSymmetric k(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) k.entry(i, j) = dist(rng);
  }
  return k;
}

// Row-sum-zero Laplacian of a random connected directed graph (a directed
// ring plus extra random edges), with positive edge weights.
inline Matrix RandomConnectedLaplacian(int p, std::mt19937_64& rng,
                                       int extra_edges = -1) {
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  std::uniform_int_distribution<int> node(0, p - 1);
  Matrix A = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) A(i, (i + 1) % p) = weight(rng);
  if (extra_edges < 0) extra_edges = p / 2;
  for (int e = 0; e < extra_edges; ++e) {
    const int i = node(rng), j = node(rng);
    if (i != j) A(i, j) = weight(rng);
  }
  Matrix L = -A;
  L.diagonal() = A.rowwise().sum();
  return L;
}

}  // namespace ggnet::testing
