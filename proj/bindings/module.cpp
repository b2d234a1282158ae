// Python bindings for the main learning operations. Estimates come back as
// plain dicts of matrices and scalars.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ggnet/ggcem.hpp"
#include "ggnet/ggim.hpp"
#include "ggnet/linalg.hpp"
#include "ggnet/pipeline.hpp"
#include "ggnet/semidef.hpp"

namespace py = pybind11;
using namespace ggnet;

namespace {

py::dict GgimDict(const GgimEstimate& est) {
  py::dict d;
  d["L_hat"] = est.L_hat;
  d["rho"] = est.rho;
  d["xi"] = est.xi;
  d["recovered"] = est.recovered;
  if (est.recovered) {
    d["sigma_hat"] = est.sigma_hat;
    d["kappa_hat"] = est.kappa_hat.Realize();
  }
  if (est.alpha) d["alpha"] = *est.alpha;
  d["converged"] = est.lasso.converged;
  return d;
}

py::dict GgcemDict(const GgcemEstimate& est) {
  py::dict d;
  d["P_hat"] = est.P_hat;
  d["rho"] = est.rho;
  d["residual"] = est.lasso.residual_l2;
  d["converged"] = est.lasso.converged;
  return d;
}

LassoOptions MakeOptions(double tol, long max_sweeps) {
  LassoOptions o;
  o.tolerance = tol;
  o.max_sweeps = max_sweeps;
  return o;
}

}  // namespace

PYBIND11_MODULE(_ggnet, m) {
  m.doc() = "directed Gaussian graphical model learning";

  m.def("solve_lyapunov", &SolveLyapunov, py::arg("L"),
        "symmetric solution of L S + S L^T = 2I");

  m.def(
      "family_member",
      [](const Matrix& Sigma, const Matrix& kappa) {
        return FamilyMember(Sigma, SkewSymmetric::FromSkewPart(kappa));
      },
      py::arg("Sigma"), py::arg("kappa"));

  m.def(
      "optimize_kappa",
      [](const Matrix& Sigma) {
        auto [kappa, L] = OptimizeKappa(Sigma);
        return py::make_tuple(kappa.Realize(), L);
      },
      py::arg("Sigma"), "sparsest family member via exact l1 minimization");

  m.def(
      "learn_ggim",
      [](const Matrix& S, double rho, double tol, long max_sweeps) {
        return GgimDict(LearnGgim(S, rho, MakeOptions(tol, max_sweeps)));
      },
      py::arg("S"), py::arg("rho"), py::arg("tol") = 1e-10,
      py::arg("max_sweeps") = 100000);

  m.def(
      "learn_ggim_bounded",
      [](const Matrix& S, double rho, double delta, double tol,
         long max_sweeps) {
        const GgimEstimate est =
            LearnGgimBounded(S, rho, delta, MakeOptions(tol, max_sweeps));
        py::dict d = GgimDict(est);
        if (est.recovered && est.alpha) {
          const BoundResult b = ComputeBound(est, S);
          d["bound"] = b.bound;
          d["bound_lhs"] = b.lhs;
          d["bound_holds"] = b.holds;
        }
        return d;
      },
      py::arg("S"), py::arg("rho"), py::arg("delta") = -1.0,
      py::arg("tol") = 1e-10, py::arg("max_sweeps") = 100000);

  m.def(
      "learn_ggcem",
      [](const Matrix& S, double rho, double tol, long max_sweeps) {
        return GgcemDict(LearnGgcem(S, rho, MakeOptions(tol, max_sweeps)));
      },
      py::arg("S"), py::arg("rho"), py::arg("tol") = 1e-10,
      py::arg("max_sweeps") = 100000);

  m.def(
      "learn_ggcem_extended",
      [](const Matrix& S, double rho, double tol, long max_sweeps) {
        return GgcemDict(
            LearnGgcemExtended(S, rho, MakeOptions(tol, max_sweeps)));
      },
      py::arg("S"), py::arg("rho"), py::arg("tol") = 1e-10,
      py::arg("max_sweeps") = 100000);

  m.def(
      "learn_ggim_semidef",
      [](const Matrix& S, double rho, double tol, long max_sweeps) {
        const SemidefGgimEstimate est =
            LearnGgimSemidef(S, rho, MakeOptions(tol, max_sweeps));
        py::dict d;
        d["L_hat"] = est.L_hat;
        d["rho"] = est.rho;
        d["reduced_residual"] = est.reduced_residual;
        d["recovered"] = est.recovered;
        if (est.recovered) {
          d["psi_hat"] = est.psi_hat;
          d["kappa_hat"] = est.kappa_hat.Realize();
        }
        return d;
      },
      py::arg("S"), py::arg("rho"), py::arg("tol") = 1e-10,
      py::arg("max_sweeps") = 100000);

  m.def("verify_balance", &VerifyBalance, py::arg("Sigma"), py::arg("L"));

  m.def(
      "simulate_diffusion",
      [](const Matrix& L, double sigma, double dt, long burn_in, long samples,
         long stride, unsigned long long seed, bool return_samples) {
        SimulationOptions o;
        o.sigma = sigma;
        o.dt = dt;
        o.burn_in_steps = burn_in;
        o.sample_steps = samples;
        o.sample_stride = stride;
        o.seed = seed;
        return return_samples ? SimulateDiffusionSamples(L, o)
                              : SimulateDiffusion(L, o);
      },
      py::arg("L"), py::arg("sigma") = std::sqrt(2.0), py::arg("dt") = 1e-3,
      py::arg("burn_in") = -1, py::arg("samples") = 100000,
      py::arg("stride") = 10, py::arg("seed") = 0,
      py::arg("return_samples") = false);

  m.def(
      "sample_covariance",
      [](const Matrix& observations) {
        ObservationSet obs;
        obs.observations = observations;
        for (int j = 0; j < observations.cols(); ++j) {
          obs.names.push_back("x" + std::to_string(j));
        }
        return SampleCovariance(obs);
      },
      py::arg("observations"), "1/n-normalized covariance of an n x p array");

  m.def(
      "roc_auc",
      [](const Matrix& scores, const std::vector<std::pair<int, int>>& gold) {
        EdgeScoreMatrix s;
        s.scores = scores;
        const RocResult r = RocAuc(s, EdgeSet(gold.begin(), gold.end()));
        py::dict d;
        d["auc"] = r.auc;
        d["points"] = r.points;
        return d;
      },
      py::arg("scores"), py::arg("gold"));
}
