#include "ggnet/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace ggnet {

namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double ParseNumber(const std::string& cell, std::size_t line_no) {
  const std::string t = Trim(cell);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || t.empty()) {
    throw std::runtime_error("CSV line " + std::to_string(line_no) +
                             ": non-numeric cell '" + cell + "'");
  }
  return value;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ObservationSet LoadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path.string() + ": empty file");
  }
  std::vector<std::string> header = SplitLine(line);
  for (auto& h : header) h = Trim(h);

  int time_col = -1, cond_col = -1;
  std::vector<int> var_cols;
  ObservationSet out;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    if (header[i] == "time" && time_col < 0) {
      time_col = i;
    } else if (header[i] == "condition" && cond_col < 0) {
      cond_col = i;
    } else {
      var_cols.push_back(i);
      out.names.push_back(header[i]);
    }
  }
  {
    std::set<std::string> uniq(out.names.begin(), out.names.end());
    if (uniq.size() != out.names.size() || out.names.empty()) {
      throw std::runtime_error(path.string() +
                               ": duplicate or missing variable names");
    }
  }

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> cells = SplitLine(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) +
                               ": expected " + std::to_string(header.size()) +
                               " cells, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(var_cols.size());
    for (int c : var_cols) row.push_back(ParseNumber(cells[c], line_no));
    rows.push_back(std::move(row));
    if (time_col >= 0) out.times.push_back(ParseNumber(cells[time_col], line_no));
    if (cond_col >= 0) out.row_conditions.push_back(Trim(cells[cond_col]));
  }
  if (rows.empty()) {
    throw std::runtime_error(path.string() + ": no observations");
  }
  out.observations.resize(rows.size(), var_cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < var_cols.size(); ++j) {
      out.observations(i, j) = rows[i][j];
    }
  }
  RequireFinite(out.observations, "LoadCsv");
  return out;
}

std::vector<ObservationSet> SplitByCondition(const ObservationSet& obs) {
  if (obs.row_conditions.empty()) return {obs};
  std::vector<std::string> order;
  std::map<std::string, std::vector<int>> groups;
  for (int i = 0; i < obs.n(); ++i) {
    const std::string& label = obs.row_conditions[i];
    if (!groups.count(label)) order.push_back(label);
    groups[label].push_back(i);
  }
  std::vector<ObservationSet> out;
  for (const std::string& label : order) {
    const std::vector<int>& idx = groups[label];
    ObservationSet part;
    part.names = obs.names;
    part.condition = label;
    part.observations.resize(idx.size(), obs.p());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      part.observations.row(r) = obs.observations.row(idx[r]);
      if (!obs.times.empty()) part.times.push_back(obs.times[idx[r]]);
    }
    out.push_back(std::move(part));
  }
  return out;
}

ObservationSet Center(const ObservationSet& obs, CenterMode mode) {
  ObservationSet out = obs;
  if (mode == CenterMode::kNone) return out;
  Eigen::RowVectorXd ref;
  if (mode == CenterMode::kMean) {
    ref = obs.observations.colwise().mean();
  } else {
    if (obs.times.empty()) {
      throw std::runtime_error("Center: time0 mode requires time stamps");
    }
    const double t0 = *std::min_element(obs.times.begin(), obs.times.end());
    ref = Eigen::RowVectorXd::Zero(obs.p());
    int count = 0;
    for (int i = 0; i < obs.n(); ++i) {
      if (obs.times[i] == t0) {
        ref += obs.observations.row(i);
        ++count;
      }
    }
    ref /= count;
  }
  out.observations.rowwise() -= ref;
  return out;
}

Matrix SampleCovariance(const ObservationSet& obs) {
  if (obs.n() < 2) {
    throw std::runtime_error("SampleCovariance: need at least 2 observations");
  }
  const Eigen::RowVectorXd mean = obs.observations.colwise().mean();
  const Matrix centered = obs.observations.rowwise() - mean;
  Matrix S = centered.transpose() * centered / obs.n();
  return 0.5 * (S + S.transpose());
}

ConditionFit FitCondition(const ObservationSet& obs, double rho,
                          const FitOptions& opts) {
  ConditionFit fit;
  fit.S = SampleCovariance(obs);
  Eigen::SelfAdjointEigenSolver<Matrix> es(fit.S);
  const double scale = 1.0 + NormLinfElementwise(fit.S);
  if (es.eigenvalues().minCoeff() > 1e-10 * scale) {
    fit.ggim = LearnGgim(fit.S, rho, opts.lasso);
    fit.ggcem = opts.extended_ggcem
                    ? LearnGgcemExtended(fit.S, rho, opts.lasso)
                    : LearnGgcem(fit.S, rho, opts.lasso);
  } else {
    fit.used_semidef = true;
    fit.ggim_semidef = LearnGgimSemidef(fit.S, rho, opts.lasso);
  }
  return fit;
}

EdgeScoreMatrix HybridEdgeScores(const std::vector<ConditionFit>& fits,
                                 const std::vector<std::string>& names,
                                 Orientation orientation) {
  if (fits.empty()) {
    throw std::invalid_argument("HybridEdgeScores: no fits");
  }
  const int p = static_cast<int>(fits.front().S.rows());
  EdgeScoreMatrix out;
  out.names = names;
  out.orientation = orientation;
  out.scores = Matrix::Zero(p, p);
  for (const ConditionFit& fit : fits) {
    if (fit.S.rows() != p) {
      throw std::invalid_argument("HybridEdgeScores: dimension mismatch");
    }
    const double inv_trace = 1.0 / fit.S.trace();
    Matrix contrib = Matrix::Zero(p, p);
    if (fit.ggim) contrib += fit.ggim->L_hat.cwiseAbs();
    if (fit.ggim_semidef) contrib += fit.ggim_semidef->L_hat.cwiseAbs();
    if (fit.ggcem) contrib += fit.ggcem->P_hat.cwiseAbs();
    out.scores += inv_trace * contrib;
  }
  if (orientation == Orientation::kSending) {
    out.scores = out.scores.transpose().eval();
  }
  out.scores.diagonal().setZero();
  return out;
}

RocResult RocAuc(const EdgeScoreMatrix& scores, const EdgeSet& gold) {
  const int p = static_cast<int>(scores.scores.rows());
  const int candidates = p * (p - 1);
  for (const auto& [from, to] : gold) {
    if (from == to || from < 0 || to < 0 || from >= p || to >= p) {
      throw std::invalid_argument("RocAuc: gold edge outside candidate set");
    }
  }
  const int positives = static_cast<int>(gold.size());
  const int negatives = candidates - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument(
        "RocAuc: AUC undefined for empty or complete gold set");
  }

  std::vector<std::pair<double, bool>> ranked;  // (score, is_gold)
  ranked.reserve(candidates);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i != j) {
        ranked.emplace_back(scores.scores(i, j), gold.count({i, j}) > 0);
      }
    }
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocResult out;
  out.points.emplace_back(0.0, 0.0);
  double auc = 0.0;
  int tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < ranked.size()) {
    std::size_t j = i;
    int dtp = 0, dfp = 0;
    while (j < ranked.size() && ranked[j].first == ranked[i].first) {
      (ranked[j].second ? dtp : dfp) += 1;
      ++j;
    }
    const double tpr0 = static_cast<double>(tp) / positives;
    tp += dtp;
    fp += dfp;
    const double tpr1 = static_cast<double>(tp) / positives;
    auc += (static_cast<double>(dfp) / negatives) * 0.5 * (tpr0 + tpr1);
    out.points.emplace_back(static_cast<double>(fp) / negatives, tpr1);
    out.threshold_count += 1;
    i = j;
  }
  out.auc = auc;
  return out;
}

std::vector<Edge> ExtractEdges(const Matrix& L, Orientation orientation,
                               double edge_tol) {
  const int p = static_cast<int>(L.rows());
  std::vector<Edge> edges;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const double entry = orientation == Orientation::kSensing ? L(i, j)
                                                                : L(j, i);
      if (std::abs(entry) > edge_tol) {
        edges.push_back({i, j, -entry});  // L = D - A
      }
    }
  }
  return edges;
}

std::string FormatEdges(const std::vector<Edge>& edges,
                        const std::vector<std::string>& names,
                        ExportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ExportFormat::kCsv:
      os << "from,to,weight\n";
      for (const Edge& e : edges) {
        os << names[e.from] << ',' << names[e.to] << ','
           << FormatDouble(e.weight) << '\n';
      }
      break;
    case ExportFormat::kJson: {
      nlohmann::json j;
      j["nodes"] = names;
      j["edges"] = nlohmann::json::array();
      for (const Edge& e : edges) {
        j["edges"].push_back({{"from", names[e.from]},
                              {"to", names[e.to]},
                              {"weight", e.weight}});
      }
      os << j.dump(2) << '\n';
      break;
    }
    case ExportFormat::kDot:
      os << "digraph G {\n";
      for (const Edge& e : edges) {
        os << "  \"" << names[e.from] << "\" -> \"" << names[e.to]
           << "\" [weight=" << FormatDouble(e.weight) << "];\n";
      }
      os << "}\n";
      break;
  }
  return os.str();
}

EdgeSet LoadGoldEdges(const std::filesystem::path& path,
                      const std::vector<std::string>& names) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    index[names[i]] = i;
  }
  EdgeSet gold;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitLine(line);
    if (cells.size() < 2) {
      throw std::runtime_error("gold CSV line " + std::to_string(line_no) +
                               ": expected from,to");
    }
    const std::string from = Trim(cells[0]);
    const std::string to = Trim(cells[1]);
    if (!header_seen) {
      header_seen = true;
      if (from == "from" && to == "to") continue;
    }
    if (!index.count(from) || !index.count(to)) {
      throw std::runtime_error("gold CSV line " + std::to_string(line_no) +
                               ": unknown variable '" + from + "' or '" + to +
                               "'");
    }
    gold.insert({index[from], index[to]});
  }
  return gold;
}

}  // namespace ggnet
