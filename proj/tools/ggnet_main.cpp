// Command line front end: model learning, hybrid edge scoring, ROC
// evaluation, and synthetic data generation over CSV files.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ggnet/ggcem.hpp"
#include "ggnet/ggim.hpp"
#include "ggnet/linalg.hpp"
#include "ggnet/pipeline.hpp"
#include "ggnet/semidef.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CommonOptions {
  std::string data_path;
  double rho = 0.01;
  std::string rho_path;  // "a:b:n", log-spaced
  double tol = 1e-10;
  long max_sweeps = 100000;
  std::string center = "mean";
  std::string orientation = "sending";
  double edge_tol = 1e-8;
  std::string format = "csv";
};

void AddCommonOptions(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("data", opts->data_path, "observations CSV")->required();
  cmd->add_option("--rho", opts->rho, "l1 penalty weight");
  cmd->add_option("--rho-path", opts->rho_path,
                  "a:b:n log-spaced penalty sweep; prints a per-rho summary");
  cmd->add_option("--tol", opts->tol, "solver convergence tolerance");
  cmd->add_option("--max-sweeps", opts->max_sweeps, "solver sweep limit");
  cmd->add_option("--center", opts->center, "centering: mean|time0|none")
      ->check(CLI::IsMember({"mean", "time0", "none"}));
  cmd->add_option("--orientation", opts->orientation,
                  "edge orientation: sensing|sending")
      ->check(CLI::IsMember({"sensing", "sending"}));
  cmd->add_option("--edge-tol", opts->edge_tol, "edge detection threshold");
  cmd->add_option("--format", opts->format, "output format: csv|json|dot")
      ->check(CLI::IsMember({"csv", "json", "dot"}));
}

ggnet::CenterMode ParseCenter(const std::string& s) {
  if (s == "mean") return ggnet::CenterMode::kMean;
  if (s == "time0") return ggnet::CenterMode::kTime0;
  return ggnet::CenterMode::kNone;
}

ggnet::Orientation ParseOrientation(const std::string& s) {
  return s == "sensing" ? ggnet::Orientation::kSensing
                        : ggnet::Orientation::kSending;
}

ggnet::ExportFormat ParseFormat(const std::string& s) {
  if (s == "json") return ggnet::ExportFormat::kJson;
  if (s == "dot") return ggnet::ExportFormat::kDot;
  return ggnet::ExportFormat::kCsv;
}

std::vector<double> ParseRhoPath(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? spec.size() : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw InputError("--rho-path expects a:b:n");
  }
  double a = 0.0, b = 0.0;
  long n = 0;
  try {
    a = std::stod(spec.substr(0, c1));
    b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    n = std::stol(spec.substr(c2 + 1));
  } catch (const std::exception&) {
    throw InputError("--rho-path expects numeric a:b:n");
  }
  if (a <= 0.0 || b <= 0.0 || n < 1) {
    throw InputError("--rho-path needs positive endpoints and n >= 1");
  }
  std::vector<double> rhos;
  for (long i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    rhos.push_back(a * std::pow(b / a, t));
  }
  return rhos;
}

ggnet::ObservationSet LoadAndCenter(const CommonOptions& opts) {
  ggnet::ObservationSet obs = ggnet::LoadCsv(opts.data_path);
  return ggnet::Center(obs, ParseCenter(opts.center));
}

ggnet::LassoOptions MakeLassoOptions(const CommonOptions& opts) {
  ggnet::LassoOptions lo;
  lo.tolerance = opts.tol;
  lo.max_sweeps = opts.max_sweeps;
  return lo;
}

// Fits one of the single-model subcommands on the pooled data and returns
// the estimated matrix (Laplacian-convention for edge extraction) plus a
// residual for sweep summaries.
struct SingleFit {
  ggnet::Matrix laplacian_like;
  double residual = 0.0;
};

SingleFit RunSingleModel(const std::string& model, const ggnet::Matrix& S,
                         double rho, double delta,
                         const ggnet::LassoOptions& lo) {
  SingleFit out;
  if (model == "ggim") {
    const auto est = ggnet::LearnGgim(S, rho, lo);
    out.laplacian_like = est.L_hat;
    out.residual = est.xi;
  } else if (model == "ggim-bounded") {
    const auto est = ggnet::LearnGgimBounded(S, rho, delta, lo);
    out.laplacian_like = est.L_hat;
    out.residual = est.xi;
  } else if (model == "semidef") {
    const auto est = ggnet::LearnGgimSemidef(S, rho, lo);
    out.laplacian_like = est.L_hat;
    out.residual = est.reduced_residual;
  } else {
    const auto est = model == "ggcem-ext"
                         ? ggnet::LearnGgcemExtended(S, rho, lo)
                         : ggnet::LearnGgcem(S, rho, lo);
    // adjacency entries come back as edge weights unchanged under the
    // weight = -entry convention of ExtractEdges
    out.laplacian_like = -est.P_hat;
    out.residual = est.lasso.residual_l2;
  }
  return out;
}

int CmdSingleModel(const std::string& model, const CommonOptions& opts,
                   double delta) {
  ggnet::ObservationSet obs = LoadAndCenter(opts);
  const ggnet::Matrix S = ggnet::SampleCovariance(obs);
  const ggnet::LassoOptions lo = MakeLassoOptions(opts);
  const ggnet::Orientation orient = ParseOrientation(opts.orientation);

  if (!opts.rho_path.empty()) {
    std::cout << "rho,edges,residual\n";
    for (double rho : ParseRhoPath(opts.rho_path)) {
      const SingleFit fit = RunSingleModel(model, S, rho, delta, lo);
      const auto edges =
          ggnet::ExtractEdges(fit.laplacian_like, orient, opts.edge_tol);
      std::cout << Fmt(rho) << ',' << edges.size() << ','
                << Fmt(fit.residual) << '\n';
    }
    return kExitOk;
  }

  const SingleFit fit = RunSingleModel(model, S, opts.rho, delta, lo);
  const auto edges =
      ggnet::ExtractEdges(fit.laplacian_like, orient, opts.edge_tol);
  std::cout << ggnet::FormatEdges(edges, obs.names, ParseFormat(opts.format));
  if (model == "ggim-bounded") {
    const auto est = ggnet::LearnGgimBounded(S, opts.rho, delta, lo);
    if (est.recovered && est.alpha) {
      const auto bound = ggnet::ComputeBound(est, S);
      std::cerr << "xi=" << Fmt(bound.xi) << " alpha=" << Fmt(bound.alpha)
                << " bound=" << Fmt(bound.bound) << " lhs=" << Fmt(bound.lhs)
                << " holds=" << (bound.holds ? "yes" : "no") << '\n';
    }
  }
  return kExitOk;
}

std::vector<ggnet::ConditionFit> FitAllConditions(
    const ggnet::ObservationSet& obs, double rho, const ggnet::FitOptions& fo) {
  std::vector<ggnet::ConditionFit> fits;
  for (const ggnet::ObservationSet& part : ggnet::SplitByCondition(obs)) {
    fits.push_back(ggnet::FitCondition(part, rho, fo));
  }
  return fits;
}

int CmdHybrid(const CommonOptions& opts, const std::string& gold_path,
              bool extended) {
  ggnet::ObservationSet obs = LoadAndCenter(opts);
  ggnet::FitOptions fo;
  fo.lasso = MakeLassoOptions(opts);
  fo.extended_ggcem = extended;
  const ggnet::Orientation orient = ParseOrientation(opts.orientation);

  std::optional<ggnet::EdgeSet> gold;
  if (!gold_path.empty()) {
    gold = ggnet::LoadGoldEdges(gold_path, obs.names);
  }

  if (!opts.rho_path.empty()) {
    std::cout << (gold ? "rho,edges,auc\n" : "rho,edges\n");
    for (double rho : ParseRhoPath(opts.rho_path)) {
      const auto fits = FitAllConditions(obs, rho, fo);
      const auto scores = ggnet::HybridEdgeScores(fits, obs.names, orient);
      int edges = 0;
      for (int i = 0; i < scores.scores.rows(); ++i) {
        for (int j = 0; j < scores.scores.cols(); ++j) {
          if (i != j && scores.scores(i, j) > opts.edge_tol) ++edges;
        }
      }
      std::cout << Fmt(rho) << ',' << edges;
      if (gold) std::cout << ',' << Fmt(ggnet::RocAuc(scores, *gold).auc);
      std::cout << '\n';
    }
    return kExitOk;
  }

  const auto fits = FitAllConditions(obs, opts.rho, fo);
  const auto scores = ggnet::HybridEdgeScores(fits, obs.names, orient);
  std::cout << "from,to,score\n";
  for (int i = 0; i < scores.scores.rows(); ++i) {
    for (int j = 0; j < scores.scores.cols(); ++j) {
      if (i != j && scores.scores(i, j) > opts.edge_tol) {
        std::cout << obs.names[i] << ',' << obs.names[j] << ','
                  << Fmt(scores.scores(i, j)) << '\n';
      }
    }
  }
  if (gold) {
    std::cerr << "auc=" << Fmt(ggnet::RocAuc(scores, *gold).auc) << '\n';
  }
  return kExitOk;
}

int CmdRoc(const CommonOptions& opts, const std::string& gold_path,
           bool extended) {
  ggnet::ObservationSet obs = LoadAndCenter(opts);
  ggnet::FitOptions fo;
  fo.lasso = MakeLassoOptions(opts);
  fo.extended_ggcem = extended;
  const ggnet::Orientation orient = ParseOrientation(opts.orientation);
  const ggnet::EdgeSet gold = ggnet::LoadGoldEdges(gold_path, obs.names);

  if (!opts.rho_path.empty()) {
    std::cout << "rho,auc\n";
    for (double rho : ParseRhoPath(opts.rho_path)) {
      const auto fits = FitAllConditions(obs, rho, fo);
      const auto scores = ggnet::HybridEdgeScores(fits, obs.names, orient);
      std::cout << Fmt(rho) << ',' << Fmt(ggnet::RocAuc(scores, gold).auc)
                << '\n';
    }
    return kExitOk;
  }

  const auto fits = FitAllConditions(obs, opts.rho, fo);
  const auto scores = ggnet::HybridEdgeScores(fits, obs.names, orient);
  const ggnet::RocResult roc = ggnet::RocAuc(scores, gold);
  std::cout << "fpr,tpr\n";
  for (const auto& [fpr, tpr] : roc.points) {
    std::cout << Fmt(fpr) << ',' << Fmt(tpr) << '\n';
  }
  std::cout << "auc," << Fmt(roc.auc) << '\n';
  return kExitOk;
}

int CmdSimulate(const std::string& laplacian_path, long samples,
                unsigned long long seed, double dt, long stride, long burn_in,
                double sigma, const std::string& condition) {
  const ggnet::ObservationSet lap = ggnet::LoadCsv(laplacian_path);
  if (lap.n() != lap.p()) {
    throw InputError("simulate: Laplacian CSV must be square (p rows, p "
                     "variable columns)");
  }
  ggnet::SimulationOptions so;
  so.seed = seed;
  so.dt = dt;
  so.sample_steps = samples;
  so.sample_stride = stride;
  so.burn_in_steps = burn_in;
  so.sigma = sigma;
  const ggnet::Matrix draws =
      ggnet::SimulateDiffusionSamples(lap.observations, so);

  for (std::size_t j = 0; j < lap.names.size(); ++j) {
    std::cout << lap.names[j] << (j + 1 < lap.names.size() ? "," : "");
  }
  if (!condition.empty()) std::cout << ",condition";
  std::cout << '\n';
  for (long i = 0; i < draws.rows(); ++i) {
    for (long j = 0; j < draws.cols(); ++j) {
      std::cout << Fmt(draws(i, j)) << (j + 1 < draws.cols() ? "," : "");
    }
    if (!condition.empty()) std::cout << ',' << condition;
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directed Gaussian graphical model learning"};
  app.require_subcommand(1);

  const std::vector<std::string> single_models{"ggim", "ggim-bounded", "ggcem",
                                               "ggcem-ext", "semidef"};
  std::map<std::string, CommonOptions> model_opts;
  double delta = -1.0;
  for (const std::string& name : single_models) {
    CLI::App* cmd = app.add_subcommand(
        name, name == "ggim"          ? "learn an interaction model"
              : name == "ggim-bounded" ? "interaction model with the "
                                         "dominance-margin error bound"
              : name == "ggcem"        ? "learn a conditional expectation model"
              : name == "ggcem-ext"    ? "conditional expectation model with "
                                         "auxiliary diagonal unknowns"
                                       : "interaction model for rank-deficient "
                                         "covariances");
    AddCommonOptions(cmd, &model_opts[name]);
    if (name == "ggim-bounded") {
      cmd->add_option("--delta", delta,
                      "diagonal dominance slack (negative: automatic)");
    }
  }

  CommonOptions hybrid_opts, roc_opts;
  std::string hybrid_gold, roc_gold;
  bool hybrid_ext = false, roc_ext = false;
  CLI::App* hybrid = app.add_subcommand(
      "hybrid", "per-condition interaction + conditional expectation scores");
  AddCommonOptions(hybrid, &hybrid_opts);
  hybrid->add_option("--gold", hybrid_gold, "gold standard edge CSV");
  hybrid->add_flag("--extended-ggcem", hybrid_ext,
                   "use the auxiliary-unknown conditional expectation model");

  CLI::App* roc = app.add_subcommand("roc", "ROC curve of hybrid scores");
  AddCommonOptions(roc, &roc_opts);
  roc->add_option("--gold", roc_gold, "gold standard edge CSV")->required();
  roc->add_flag("--extended-ggcem", roc_ext,
                "use the auxiliary-unknown conditional expectation model");

  std::string sim_path, sim_condition;
  long sim_samples = 1000, sim_stride = 10, sim_burn_in = -1;
  unsigned long long sim_seed = 0;
  double sim_dt = 1e-3, sim_sigma = std::sqrt(2.0);
  CLI::App* sim = app.add_subcommand(
      "simulate", "draw stationary diffusion samples from a Laplacian CSV");
  sim->add_option("laplacian", sim_path, "square Laplacian CSV with header")
      ->required();
  sim->add_option("--samples", sim_samples, "number of output rows");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--dt", sim_dt, "integration step");
  sim->add_option("--stride", sim_stride, "steps between samples");
  sim->add_option("--burn-in", sim_burn_in,
                  "burn-in steps (negative: automatic)");
  sim->add_option("--sigma", sim_sigma, "noise level");
  sim->add_option("--condition", sim_condition,
                  "emit a constant condition column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    for (const std::string& name : single_models) {
      if (app.get_subcommand(name)->parsed()) {
        return CmdSingleModel(name, model_opts[name], delta);
      }
    }
    if (hybrid->parsed()) return CmdHybrid(hybrid_opts, hybrid_gold, hybrid_ext);
    if (roc->parsed()) return CmdRoc(roc_opts, roc_gold, roc_ext);
    if (sim->parsed()) {
      return CmdSimulate(sim_path, sim_samples, sim_seed, sim_dt, sim_stride,
                         sim_burn_in, sim_sigma, sim_condition);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::runtime_error& e) {
    // parse and I/O failures are input errors; everything else from the
    // numerical core is a numerical failure
    const std::string what = e.what();
    const bool input = what.find("CSV") != std::string::npos ||
                       what.find("cannot open") != std::string::npos ||
                       what.find("no observations") != std::string::npos ||
                       what.find("empty file") != std::string::npos ||
                       what.find("duplicate") != std::string::npos;
    std::cerr << "error: " << what << '\n';
    return input ? kExitInput : kExitNumerical;
  }
  return kExitOk;
}
