#pragma once

#include "ggnet/linalg.hpp"

namespace ggnet {

// Exact minimizer of the piecewise-linear convex objective
//   ||c + G u||_1  over  u in R^m,
// computed as a linear program via the standard absolute-value splitting
// (residual split into nonnegative parts) and a dense tableau simplex with
// Bland's rule. Intended for small problems (a few hundred variables).
struct L1MinResult {
  Vector u;
  double objective = 0.0;
  long pivots = 0;
};

L1MinResult MinimizeL1Linear(const Vector& c, const Matrix& G,
                             long max_pivots = 200000);

}  // namespace ggnet
