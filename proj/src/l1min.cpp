#include "ggnet/l1min.hpp"

#include <cmath>
#include <vector>

namespace ggnet {

namespace {
constexpr double kPivotEps = 1e-9;
}

L1MinResult MinimizeL1Linear(const Vector& c, const Matrix& G,
                             long max_pivots) {
  const int n = static_cast<int>(G.rows());
  const int m = static_cast<int>(G.cols());
  if (c.size() != n) {
    throw std::invalid_argument("MinimizeL1Linear: dimension mismatch");
  }

  // LP in standard form over x = [u+ (m), u- (m), s+ (n), s- (n)] >= 0:
  //   min 1's+ + 1's-   s.t.  G u+ - G u- - s+ + s- = -c
  const int ncols = 2 * m + 2 * n;
  Matrix T(n, ncols + 1);  // constraint tableau, last column = rhs
  T.leftCols(m) = G;
  T.middleCols(m, m) = -G;
  T.middleCols(2 * m, n) = -Matrix::Identity(n, n);
  T.middleCols(2 * m + n, n) = Matrix::Identity(n, n);
  T.col(ncols) = -c;

  Vector cost = Vector::Zero(ncols);
  cost.tail(2 * n).setOnes();

  // Row-wise sign normalization gives an identity submatrix on the
  // appropriate split variables; no phase-1 needed.
  std::vector<int> basis(n);
  for (int i = 0; i < n; ++i) {
    if (T(i, ncols) < 0.0) T.row(i) = -T.row(i);
    basis[i] = (c[i] > 0.0) ? (2 * m + i) : (2 * m + n + i);
  }

  Eigen::RowVectorXd reduced(ncols + 1);
  reduced.head(ncols) = cost.transpose();
  reduced[ncols] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (cost[basis[i]] != 0.0) reduced -= cost[basis[i]] * T.row(i);
  }

  L1MinResult out;
  for (long pivot = 0; pivot < max_pivots; ++pivot) {
    // Bland's rule: lowest-index entering column with negative reduced cost
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (reduced[j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < n; ++i) {
      if (T(i, enter) > kPivotEps) {
        const double ratio = T(i, ncols) / T(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotEps ||
            (ratio < best_ratio + kPivotEps && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      throw std::runtime_error("MinimizeL1Linear: unbounded LP");
    }

    T.row(leave) /= T(leave, enter);
    for (int i = 0; i < n; ++i) {
      if (i != leave && T(i, enter) != 0.0) {
        T.row(i) -= T(i, enter) * T.row(leave);
      }
    }
    reduced -= reduced[enter] * T.row(leave);
    basis[leave] = enter;
    out.pivots = pivot + 1;
  }

  out.u = Vector::Zero(m);
  double obj = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = T(i, ncols);
    if (basis[i] < m) {
      out.u[basis[i]] += v;
    } else if (basis[i] < 2 * m) {
      out.u[basis[i] - m] -= v;
    } else {
      obj += v;
    }
  }
  out.objective = obj;
  return out;
}

}  // namespace ggnet
