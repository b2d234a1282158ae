#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ggnet/ggim.hpp"
#include "ggnet/l1min.hpp"
#include "test_util.hpp"

using namespace ggnet;
using ggnet::testing::RandomMatrix;
using ggnet::testing::RandomSkew;
using ggnet::testing::RandomSpd;

TEST_CASE("l1 linear minimizer against dense scans") {
  SUBCASE("single breakpoint") {
    // min |1 - u| -> u = 1
    Vector c(1);
    c << 1.0;
    Matrix G(1, 1);
    G << -1.0;
    const auto res = MinimizeL1Linear(c, G);
    CHECK(res.u[0] == doctest::Approx(1.0));
    CHECK(res.objective == doctest::Approx(0.0));
  }
  SUBCASE("1-D random instances vs breakpoint scan") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 4 + static_cast<int>(rng() % 5);
      const Vector c = RandomMatrix(n, 1, rng);
      const Matrix G = RandomMatrix(n, 1, rng);
      const auto res = MinimizeL1Linear(c, G);
      // optimum lies at a breakpoint -c_i/g_i
      double best = (c).cwiseAbs().sum();
      for (int i = 0; i < n; ++i) {
        if (G(i, 0) != 0.0) {
          const double u = -c[i] / G(i, 0);
          best = std::min(best, (c + G * u).cwiseAbs().sum());
        }
      }
      CHECK(res.objective == doctest::Approx(best).epsilon(1e-10));
    }
  }
  SUBCASE("multi-dimensional instances vs dense grid refinement") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector c = RandomMatrix(6, 1, rng);
      const Matrix G = RandomMatrix(6, 2, rng);
      const auto res = MinimizeL1Linear(c, G);
      double best = std::numeric_limits<double>::infinity();
      for (double u0 = -3; u0 <= 3; u0 += 0.002) {
        for (double u1 = -3; u1 <= 3; u1 += 0.05) {
          Vector u(2);
          u << u0, u1;
          best = std::min(best, (c + G * u).cwiseAbs().sum());
        }
      }
      CHECK(res.objective <= best + 1e-6);
    }
  }
}

TEST_CASE("family members solve the Lyapunov equation exactly") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 2 + static_cast<int>(rng() % 7);  // up to 8
    const Matrix Sigma = RandomSpd(p, rng);
    const SkewSymmetric kappa = RandomSkew(p, rng);
    const Matrix L = FamilyMember(Sigma, kappa);
    const Matrix res =
        L * Sigma + Sigma * L.transpose() - 2.0 * Matrix::Identity(p, p);
    CHECK(NormLinfElementwise(res) < 1e-9);
  }
}

TEST_CASE("family member closed forms") {
  const Matrix I3 = Matrix::Identity(3, 3);
  CHECK(FamilyMember(I3, SkewSymmetric(3)).isApprox(I3));

  SkewSymmetric k(3);
  k.entry(0, 1) = 0.7;
  k.entry(1, 2) = -0.2;
  CHECK(FamilyMember(I3, k).isApprox(I3 + k.Realize()));

  Matrix Sigma(2, 2);
  Sigma << 2, 1, 1, 1;
  SkewSymmetric k2(2);
  k2.entry(0, 1) = 0.5;
  Matrix expected(2, 2);
  expected << 0.5, 0.0, -1.5, 2.5;
  CHECK(FamilyMember(Sigma, k2).isApprox(expected, 1e-12));
}

TEST_CASE("optimize_kappa") {
  SUBCASE("identity covariance keeps kappa at zero") {
    const auto [kappa, L] = OptimizeKappa(Matrix::Identity(3, 3));
    CHECK(NormLinfElementwise(kappa.Realize()) < 1e-10);
    CHECK(NormL1Elementwise(L) == doctest::Approx(3.0));
  }
  SUBCASE("diagonal covariance keeps kappa at zero") {
    Matrix Sigma = Vector::LinSpaced(4, 1.0, 4.0).asDiagonal();
    const auto [kappa, L] = OptimizeKappa(Sigma);
    CHECK(NormLinfElementwise(kappa.Realize()) < 1e-10);
  }
  SUBCASE("p=2 worked example with breakpoint-scan oracle") {
    Matrix Sigma(2, 2);
    Sigma << 2, 1, 1, 1;
    const auto [kappa, L] = OptimizeKappa(Sigma);
    CHECK(kappa.entry(0, 1) == doctest::Approx(0.5).epsilon(1e-8));
    Matrix expected(2, 2);
    expected << 0.5, 0.0, -1.5, 2.5;
    CHECK(NormLinfElementwise(L - expected) < 1e-8);
    CHECK(NormL1Elementwise(L) == doctest::Approx(4.5).epsilon(1e-10));

    // independent oracle: scan |1-k| + |1-2k| + |1+k| + |2+k| breakpoints
    double best_obj = std::numeric_limits<double>::infinity();
    for (double k2 : {1.0, 0.5, -1.0, -2.0}) {
      const double obj = std::abs(1 - k2) + std::abs(1 - 2 * k2) +
                         std::abs(1 + k2) + std::abs(2 + k2);
      best_obj = std::min(best_obj, obj);
    }
    CHECK(NormL1Elementwise(L) == doctest::Approx(best_obj).epsilon(1e-8));
  }
  SUBCASE("random p=2 LP matches exhaustive 1-D scan") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
      const Matrix Sigma = RandomSpd(2, rng);
      const auto [kappa, L] = OptimizeKappa(Sigma);
      const Matrix P = Sigma.inverse();
      auto obj = [&](double k2) {
        SkewSymmetric s(2);
        s.entry(0, 1) = k2;
        return NormL1Elementwise((Matrix::Identity(2, 2) + s.Realize()) * P);
      };
      // scan all breakpoints of the four absolute-value terms
      double best = obj(0.0);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          // term |P(i,j) + k * (+-P(1-i, j))| has breakpoint at +-P(i,j)/P(1-i,j)
          const double denom = P(1 - i, j);
          if (denom != 0.0) {
            best = std::min(best, obj((i == 0 ? -1.0 : 1.0) * P(i, j) / denom));
          }
        }
      }
      CHECK(NormL1Elementwise(L) <= best + 1e-8);
    }
  }
}

TEST_CASE("full system construction") {
  SUBCASE("identity covariance at p=2") {
    const FullSystem sys = BuildFullSystem(Matrix::Identity(2, 2));
    REQUIRE(sys.H.rows() == 3);
    // equations: 2 L11 = 2, L12 + L21 = 0, 2 L22 = 2
    Vector z = Vectorize(Matrix::Identity(2, 2));
    CHECK((sys.H * z - sys.f).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(sys.H(0, 0) == doctest::Approx(2.0));
    CHECK(sys.H(1, 1) == doctest::Approx(1.0));
    CHECK(sys.H(1, 2) == doctest::Approx(1.0));
  }
  SUBCASE("row count at p=4") {
    CHECK(BuildFullSystem(Matrix::Identity(4, 4)).H.rows() == 10);
  }
  SUBCASE("family members satisfy H vec(L) = f exactly") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
      const int p = 2 + static_cast<int>(rng() % 5);
      const Matrix Sigma = RandomSpd(p, rng);
      const Matrix L = FamilyMember(Sigma, RandomSkew(p, rng));
      const FullSystem sys = BuildFullSystem(Sigma);
      CHECK((sys.H * Vectorize(L) - sys.f).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("learn_ggim") {
  SUBCASE("identity covariance at small rho") {
    const GgimEstimate est = LearnGgim(Matrix::Identity(3, 3), 1e-3);
    CHECK(NormLinfElementwise(est.L_hat - Matrix::Identity(3, 3)) < 1e-2);
  }
  SUBCASE("exact covariance of a sparse stable L is feasible") {
    Matrix L(3, 3);
    L << 1.5, -0.5, 0, 0, 1.0, -0.3, 0, 0, 0.8;
    const Matrix Sigma = SolveLyapunov(L);
    const GgimEstimate est = LearnGgim(Sigma, 1e-9);
    CHECK(est.xi < 1e-6);
  }
  SUBCASE("l1 mass shrinks along the penalty path") {
    std::mt19937_64 rng(31);
    const Matrix Sigma = RandomSpd(4, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double rho : {0.001, 0.01, 0.1, 1.0}) {
      const GgimEstimate est = LearnGgim(Sigma, rho);
      const double l1 = NormL1Elementwise(est.L_hat);
      CHECK(l1 <= prev + 1e-8);
      prev = l1;
    }
  }
}

TEST_CASE("recover_sigma_kappa") {
  SUBCASE("identity") {
    const auto [sigma, kappa] = RecoverSigmaKappa(Matrix::Identity(3, 3));
    CHECK(sigma.isApprox(Matrix::Identity(3, 3)));
    CHECK(NormLinfElementwise(kappa.Realize()) < 1e-12);
  }
  SUBCASE("round trip through the family") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
      const int p = 2 + static_cast<int>(rng() % 5);
      const Matrix Sigma = RandomSpd(p, rng);
      const SkewSymmetric kappa = RandomSkew(p, rng, 0.3);
      const Matrix L = FamilyMember(Sigma, kappa);
      if (!ValidateStability(L)) continue;
      const auto [sigma_hat, kappa_hat] = RecoverSigmaKappa(L);
      CHECK(NormLinfElementwise(sigma_hat - Sigma) < 1e-8);
      CHECK(NormLinfElementwise(kappa_hat.Realize() - kappa.Realize()) < 1e-8);
    }
  }
  SUBCASE("worked p=2 inverse of the family example") {
    Matrix L(2, 2);
    L << 0.5, 0.0, -1.5, 2.5;
    const auto [sigma, kappa] = RecoverSigmaKappa(L);
    Matrix expected(2, 2);
    expected << 2, 1, 1, 1;
    CHECK(NormLinfElementwise(sigma - expected) < 1e-10);
    CHECK(kappa.entry(0, 1) == doctest::Approx(0.5));
  }
  SUBCASE("unstable input throws") {
    CHECK_THROWS(RecoverSigmaKappa(-Matrix::Identity(2, 2)));
  }
}

TEST_CASE("reduced system") {
  SUBCASE("diagonal covariance has zero rhs and zero solution") {
    Matrix S = Vector::LinSpaced(3, 1.0, 3.0).asDiagonal();
    const ReducedSystem sys = BuildReducedSystem(S);
    CHECK(sys.beta.cwiseAbs().maxCoeff() == 0.0);
    const GgimEstimate est = LearnGgimBounded(S, 0.01);
    Matrix offdiag = est.L_hat;
    offdiag.diagonal().setZero();
    CHECK(NormLinfElementwise(offdiag) == 0.0);
  }
  SUBCASE("true family member off-diagonals satisfy the reduced equations") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix Sigma = RandomSpd(3, rng);
      const Matrix L = FamilyMember(Sigma, RandomSkew(3, rng));
      const ReducedSystem sys = BuildReducedSystem(Sigma);
      Vector zeta(6);
      for (int m = 0; m < 3; ++m) {
        for (int i = 0; i < 3; ++i) {
          if (i != m) zeta[OffDiagIndex(3, i, m)] = L(i, m);
        }
      }
      CHECK((sys.H_tilde * zeta - sys.beta).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("complete_diagonal") {
  SUBCASE("zero off-diagonals with identity covariance") {
    const auto done =
        CompleteDiagonal(Matrix::Zero(2, 2), Matrix::Identity(2, 2), 0.5);
    CHECK(done.diag.isApprox(Vector::Ones(2)));
    CHECK(done.epsilon.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("lift formula") {
    // nu_r + nu_c = 3 with base diag 1 and delta 0.01 -> diag 3.01
    Matrix off(2, 2);
    off << 0, 1.5, 1.5, 0;
    Matrix S = Matrix::Identity(2, 2);
    // base_i = 1 - off(i, j) * S(i, j) = 1 since S off-diagonals are 0
    const auto done = CompleteDiagonal(off, S, 0.01);
    CHECK(done.diag[0] == doctest::Approx(3.01));
    CHECK(done.epsilon[0] == doctest::Approx(2.01));
  }
  SUBCASE("dominance of the Kronecker operator after completion") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
      const int p = 3 + static_cast<int>(rng() % 3);
      Matrix off = RandomMatrix(p, p, rng);
      off.diagonal().setZero();
      const Matrix S = RandomSpd(p, rng);
      const auto done = CompleteDiagonal(off, S, 1e-3);
      Matrix L = off;
      L.diagonal() = done.diag;
      CHECK(DiagDominanceAlpha(LyapunovKronecker(L)).has_value());
      // also dominant in the transposed-Kronecker form
      const Matrix I = Matrix::Identity(p, p);
      const Matrix alt = Kronecker(I, L) + Kronecker(L.transpose(), I);
      CHECK(DiagDominanceAlpha(alt).has_value());
    }
  }
}

TEST_CASE("learn_ggim_bounded and the covariance bound") {
  SUBCASE("identity covariance is exact with alpha 2") {
    const GgimEstimate est = LearnGgimBounded(Matrix::Identity(3, 3), 0.1);
    CHECK(NormLinfElementwise(est.L_hat - Matrix::Identity(3, 3)) < 1e-10);
    CHECK(est.xi < 1e-10);
    REQUIRE(est.alpha.has_value());
    CHECK(*est.alpha == doctest::Approx(2.0));
    const BoundResult bound = ComputeBound(est, Matrix::Identity(3, 3));
    CHECK(bound.holds);
    CHECK(bound.lhs < 1e-9);
  }
  SUBCASE("diagonal covariance uses the diagonal identity") {
    Matrix S(2, 2);
    S << 2, 0, 0, 1;
    const GgimEstimate est = LearnGgimBounded(S, 0.05);
    CHECK(est.L_hat(0, 0) == doctest::Approx(0.5));
    CHECK(est.L_hat(1, 1) == doctest::Approx(1.0));
    CHECK(est.xi < 1e-10);
  }
  SUBCASE("bound holds on random SPD inputs") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
      const int p = 3 + static_cast<int>(rng() % 4);
      const Matrix S = RandomSpd(p, rng);
      const GgimEstimate est = LearnGgimBounded(S, 0.01);
      REQUIRE(est.alpha.has_value());
      REQUIRE(est.recovered);
      const BoundResult bound = ComputeBound(est, S);
      CHECK(bound.holds);
    }
  }
  SUBCASE("inflating xi grows the bound linearly") {
    const GgimEstimate est = LearnGgimBounded(Matrix::Identity(3, 3), 0.1);
    BoundResult b = ComputeBound(est, Matrix::Identity(3, 3));
    GgimEstimate inflated = est;
    inflated.xi = 1.0;
    const BoundResult b1 = ComputeBound(inflated, Matrix::Identity(3, 3));
    inflated.xi = 2.0;
    const BoundResult b2 = ComputeBound(inflated, Matrix::Identity(3, 3));
    CHECK(b2.bound == doctest::Approx(2.0 * b1.bound));
    CHECK(b.bound <= b1.bound);
  }
}

TEST_CASE("corollary bound") {
  BoundResult b;
  b.xi = 0.6;
  b.alpha = 2.0;
  b.bound = 0.3;
  CHECK(CorollaryBound(b, 0.0) == doctest::Approx(0.3));
  CHECK(CorollaryBound(b, 0.1) == doctest::Approx(0.4));
  CHECK_THROWS(CorollaryBound(b, -1.0));

  // external sigma_tilde = S reduces the check to the base bound
  std::mt19937_64 rng(53);
  const Matrix S = RandomSpd(3, rng);
  const GgimEstimate est = LearnGgimBounded(S, 0.01);
  const BoundResult bound = ComputeBound(est, S);
  bool holds = false;
  CorollaryBound(bound, 0.0, &S, &est.sigma_hat, &holds);
  CHECK(holds == bound.holds);
}
