#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ggnet/ggcem.hpp"
#include "ggnet/ggim.hpp"
#include "ggnet/linalg.hpp"
#include "ggnet/semidef.hpp"

// End-to-end tooling: data ingestion, centering, covariance, per-condition
// fitting, hybrid edge scoring, and ROC/AUC evaluation.
namespace ggnet {

struct ObservationSet {
  std::vector<std::string> names;  // p unique variable names
  Matrix observations;             // n x p
  std::vector<double> times;       // empty or size n
  std::vector<std::string> row_conditions;  // empty or size n
  std::string condition;           // label after splitting

  int n() const { return static_cast<int>(observations.rows()); }
  int p() const { return static_cast<int>(observations.cols()); }
};

enum class CenterMode { kNone, kMean, kTime0 };

enum class Orientation { kSensing, kSending };

struct EdgeScoreMatrix {
  Matrix scores;  // p x p, nonnegative, zero diagonal
  Orientation orientation = Orientation::kSensing;
  std::vector<std::string> names;
};

struct RocResult {
  std::vector<std::pair<double, double>> points;  // (FPR, TPR)
  double auc = 0.0;
  int threshold_count = 0;
};

struct ConditionFit {
  std::optional<GgimEstimate> ggim;
  std::optional<SemidefGgimEstimate> ggim_semidef;  // singular-S route
  std::optional<GgcemEstimate> ggcem;
  Matrix S;
  bool used_semidef = false;
};

struct FitOptions {
  LassoOptions lasso;
  bool extended_ggcem = false;
};

// CSV with a header of variable names; leading "time" and "condition"
// columns are recognized by name. Throws on ragged rows, non-numeric cells,
// duplicate names, or an empty body.
ObservationSet LoadCsv(const std::filesystem::path& path);

// Splits one set into per-condition sets in order of first appearance,
// preserving row order within each condition. A set without per-row labels
// comes back unchanged as a single condition.
std::vector<ObservationSet> SplitByCondition(const ObservationSet& obs);

ObservationSet Center(const ObservationSet& obs, CenterMode mode);

// 1/n-normalized sample covariance (the Gaussian MLE).
Matrix SampleCovariance(const ObservationSet& obs);

// Fits both models at the given rho. Positive definite S uses the standard
// GGIM learner; singular S routes the GGIM half through the rank-deficient
// variant and the GGCEM fit is refused (left empty).
ConditionFit FitCondition(const ObservationSet& obs, double rho,
                          const FitOptions& opts = {});

// score(i,j) = sum over conditions of
//   |L_ggim(i,j)| / trace(S_cond) + |P_ggcem(i,j)| / trace(S_cond)
// on off-diagonals; fits are normalized to the requested orientation
// before summing.
EdgeScoreMatrix HybridEdgeScores(const std::vector<ConditionFit>& fits,
                                 const std::vector<std::string>& names,
                                 Orientation orientation);

using EdgeSet = std::set<std::pair<int, int>>;  // directed (from, to)

// Threshold sweep over distinct score values with trapezoidal integration;
// tied scores collapse into a single threshold step. Candidates are all
// ordered pairs i != j. Throws when the gold set is empty or contains every
// candidate.
RocResult RocAuc(const EdgeScoreMatrix& scores, const EdgeSet& gold);

struct Edge {
  int from;
  int to;
  double weight;
};

// Directed edges of a Laplacian estimate: entry (i,j), i != j, is an edge
// when |L(i,j)| > tol; reported weight is -L(i,j) (L = D - A). Positive
// off-diagonals are retained with negative weight, not clipped. The list is
// sorted by (from, to) in the requested orientation.
std::vector<Edge> ExtractEdges(const Matrix& L, Orientation orientation,
                               double edge_tol = 1e-8);

enum class ExportFormat { kCsv, kJson, kDot };

std::string FormatEdges(const std::vector<Edge>& edges,
                        const std::vector<std::string>& names,
                        ExportFormat format);

// Gold-standard CSV with columns from,to of variable names.
EdgeSet LoadGoldEdges(const std::filesystem::path& path,
                      const std::vector<std::string>& names);

}  // namespace ggnet
