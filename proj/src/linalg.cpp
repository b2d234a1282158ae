#include "ggnet/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace ggnet {

void RequireFinite(const Matrix& M, const char* what) {
  if (!M.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

SkewSymmetric::SkewSymmetric(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("SkewSymmetric: dim must be >= 1");
  upper_ = Vector::Zero(dim * (dim - 1) / 2);
}

int SkewSymmetric::index(int i, int j) const {
  if (i < 0 || j <= i || j >= dim_) {
    throw std::out_of_range("SkewSymmetric: need 0 <= i < j < dim");
  }
  // row-major offset into the strict upper triangle
  return i * dim_ - i * (i + 1) / 2 + (j - i - 1);
}

double& SkewSymmetric::entry(int i, int j) { return upper_[index(i, j)]; }
double SkewSymmetric::entry(int i, int j) const { return upper_[index(i, j)]; }

Matrix SkewSymmetric::Realize() const {
  Matrix K = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      K(i, j) = entry(i, j);
      K(j, i) = -entry(i, j);
    }
  }
  return K;
}

SkewSymmetric SkewSymmetric::FromSkewPart(const Matrix& K) {
  if (K.rows() != K.cols()) {
    throw std::invalid_argument("FromSkewPart: matrix must be square");
  }
  SkewSymmetric s(static_cast<int>(K.rows()));
  for (int i = 0; i < K.rows(); ++i) {
    for (int j = i + 1; j < K.cols(); ++j) {
      s.entry(i, j) = 0.5 * (K(i, j) - K(j, i));
    }
  }
  return s;
}

Matrix Kronecker(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

Vector Vectorize(const Matrix& M) {
  return Eigen::Map<const Vector>(M.data(), M.size());
}

Matrix Unvectorize(const Vector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw std::invalid_argument("Unvectorize: length mismatch");
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

bool ValidateStability(const Matrix& L) {
  if (L.rows() != L.cols()) {
    throw std::invalid_argument("ValidateStability: matrix must be square");
  }
  RequireFinite(L, "ValidateStability");
  Eigen::EigenSolver<Matrix> es(L, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("ValidateStability: eigenvalue iteration failed");
  }
  return es.eigenvalues().real().minCoeff() > kStabilityTol;
}

Matrix LyapunovKronecker(const Matrix& L) {
  const auto p = L.rows();
  const Matrix I = Matrix::Identity(p, p);
  return Kronecker(I, L) + Kronecker(L, I);
}

Matrix SolveLyapunov(const Matrix& L) {
  RequireFinite(L, "SolveLyapunov");
  if (!ValidateStability(L)) {
    throw std::runtime_error("SolveLyapunov: L is not stable");
  }
  const auto p = L.rows();
  const Matrix K = LyapunovKronecker(L);
  const Vector f = Vectorize(2.0 * Matrix::Identity(p, p));
  Eigen::FullPivLU<Matrix> lu(K);
  if (!lu.isInvertible()) {
    throw std::runtime_error("SolveLyapunov: singular Kronecker system");
  }
  Matrix Sigma = Unvectorize(lu.solve(f), static_cast<int>(p),
                             static_cast<int>(p));
  // the exact solution is symmetric; remove roundoff asymmetry
  return 0.5 * (Sigma + Sigma.transpose());
}

ConditionalStats ConditionalCovariance(const Matrix& S, int j, int k) {
  const int p = static_cast<int>(S.rows());
  if (j == k || j < 0 || k < 0 || j >= p || k >= p) {
    throw std::invalid_argument("ConditionalCovariance: need distinct j, k");
  }
  ConditionalStats out;
  out.j = j;
  out.k = k;
  Eigen::Matrix2d cond;
  if (p == 2) {
    // empty conditioning set: unconditional moments
    cond << S(j, j), S(j, k), S(k, j), S(k, k);
  } else {
    std::vector<int> c;
    for (int i = 0; i < p; ++i) {
      if (i != j && i != k) c.push_back(i);
    }
    const int q = static_cast<int>(c.size());
    Eigen::Matrix2d Saa;
    Saa << S(j, j), S(j, k), S(k, j), S(k, k);
    Matrix Sab(2, q), Scc(q, q);
    for (int a = 0; a < q; ++a) {
      Sab(0, a) = S(j, c[a]);
      Sab(1, a) = S(k, c[a]);
      for (int b = 0; b < q; ++b) Scc(a, b) = S(c[a], c[b]);
    }
    Eigen::LDLT<Matrix> ldlt(Scc);
    if (ldlt.info() != Eigen::Success) {
      throw std::runtime_error("ConditionalCovariance: singular S_{c,c}");
    }
    cond = Saa - Sab * ldlt.solve(Sab.transpose());
  }
  out.sigma_j = cond(0, 0);
  out.sigma_k = cond(1, 1);
  out.sigma_jk = 0.5 * (cond(0, 1) + cond(1, 0));
  return out;
}

Matrix BuildQBasis(int p) {
  if (p < 2) throw std::invalid_argument("BuildQBasis: p must be >= 2");
  Matrix Q = Matrix::Zero(p - 1, p);
  for (int k = 1; k < p; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) Q(k - 1, i) = s;
    Q(k - 1, k) = -k * s;
  }
  return Q;
}

double NormL1Elementwise(const Matrix& M) { return M.cwiseAbs().sum(); }

double NormLinfElementwise(const Matrix& M) {
  return M.cwiseAbs().maxCoeff();
}

std::optional<double> DiagDominanceAlpha(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw std::invalid_argument("DiagDominanceAlpha: matrix must be square");
  }
  double alpha = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double off = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
    alpha = std::min(alpha, std::abs(A(i, i)) - off);
  }
  if (alpha <= 0.0) return std::nullopt;
  return alpha;
}

Matrix SimulateDiffusionSamples(const Matrix& L,
                                const SimulationOptions& opts) {
  RequireFinite(L, "SimulateDiffusionSamples");
  if (opts.dt <= 0.0) {
    throw std::invalid_argument("SimulateDiffusionSamples: dt must be positive");
  }
  if (!ValidateStability(L)) {
    throw std::runtime_error("SimulateDiffusionSamples: L is not stable");
  }
  const int p = static_cast<int>(L.rows());

  std::int64_t burn_in = opts.burn_in_steps;
  if (burn_in < 0) {
    Eigen::EigenSolver<Matrix> es(L, false);
    const double lam = es.eigenvalues().real().minCoeff();
    burn_in = static_cast<std::int64_t>(std::ceil(10.0 / (lam * opts.dt)));
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_scale = opts.sigma * std::sqrt(opts.dt);

  Vector x = Vector::Zero(p);
  Vector noise(p);
  auto step = [&] {
    for (int i = 0; i < p; ++i) noise[i] = normal(rng);
    x += opts.dt * (-(L * x)) + noise_scale * noise;
    if (x.cwiseAbs().maxCoeff() > 1e8) {
      throw std::runtime_error(
          "SimulateDiffusionSamples: state diverged (dt too large?)");
    }
  };

  for (std::int64_t s = 0; s < burn_in; ++s) step();

  Matrix samples(opts.sample_steps, p);
  for (std::int64_t s = 0; s < opts.sample_steps; ++s) {
    for (std::int64_t t = 0; t < opts.sample_stride; ++t) step();
    samples.row(s) = x.transpose();
  }
  return samples;
}

Matrix SimulateDiffusion(const Matrix& L, const SimulationOptions& opts) {
  RequireFinite(L, "SimulateDiffusion");
  if (opts.dt <= 0.0) {
    throw std::invalid_argument("SimulateDiffusion: dt must be positive");
  }
  if (!ValidateStability(L)) {
    throw std::runtime_error("SimulateDiffusion: L is not stable");
  }
  const int p = static_cast<int>(L.rows());

  std::int64_t burn_in = opts.burn_in_steps;
  if (burn_in < 0) {
    Eigen::EigenSolver<Matrix> es(L, false);
    const double lam = es.eigenvalues().real().minCoeff();
    burn_in = static_cast<std::int64_t>(std::ceil(10.0 / (lam * opts.dt)));
  }

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_scale = opts.sigma * std::sqrt(opts.dt);

  Vector x = Vector::Zero(p);
  Vector noise(p);
  auto step = [&] {
    for (int i = 0; i < p; ++i) noise[i] = normal(rng);
    x += opts.dt * (-(L * x)) + noise_scale * noise;
    if (x.cwiseAbs().maxCoeff() > 1e8) {
      throw std::runtime_error("SimulateDiffusion: state diverged (dt too large?)");
    }
  };

  for (std::int64_t s = 0; s < burn_in; ++s) step();

  // accumulate first and second moments of the sampled states
  Vector mean = Vector::Zero(p);
  Matrix second = Matrix::Zero(p, p);
  for (std::int64_t s = 0; s < opts.sample_steps; ++s) {
    for (std::int64_t t = 0; t < opts.sample_stride; ++t) step();
    mean += x;
    second.selfadjointView<Eigen::Lower>().rankUpdate(x);
  }
  const double n = static_cast<double>(opts.sample_steps);
  mean /= n;
  Matrix cov = Matrix(second.selfadjointView<Eigen::Lower>()) / n -
               mean * mean.transpose();
  return 0.5 * (cov + cov.transpose());
}

}  // namespace ggnet
