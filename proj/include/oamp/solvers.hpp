#pragma once

#include <Eigen/Core>

#include <vector>

#include "oamp/denoisers.hpp"
#include "oamp/linest.hpp"
#include "oamp/model.hpp"

namespace oamp {

/// Per-iteration record of a solver run. True-error columns are filled only
/// when x_true is known; online estimates and the divergence diagnostic are
/// always recorded.
struct Trajectory {
  enum class Status { Ok, Diverged, DegenerateC };

  std::vector<double> mse_out;    // ||eta_out(r^t) - x||^2 / N
  std::vector<double> v2_true;    // ||s^t - x||^2 / N
  std::vector<double> tau2_true;  // ||r^t - x||^2 / N
  std::vector<double> v2_hat;
  std::vector<double> tau2_hat;
  std::vector<double> dbar;      // empirical divergence of the base denoiser
  std::vector<double> orth_hq;   // h^t . q^t / N
  std::vector<double> orth_hx;   // h^t . x / N

  Eigen::VectorXd x_hat;  // final output estimate
  Status status = Status::Ok;
  bool early_stopped = false;

  int iterations() const { return int(mse_out.size()); }
};

struct SolverOptions {
  int iterations = 50;
  double early_stop_tol = 1e-12;  // on |v2_hat change|; 0 disables
};

/// AMP iteration with the Onsager term, s^0 = 0. The denoiser noise level
/// comes from the online estimate (N/M) v2_hat + sigma2.
Trajectory run_amp(const LinearSystem& system, const AmpNle& nle, const SolverOptions& options);

/// OAMP iteration: de-correlated LE rebuilt from the online v2_hat each
/// round, divergence-free NLE, separate output denoiser. v2_hat starts at
/// E{X^2}.
Trajectory run_oamp(const LinearSystem& system, LinearEstimatorKind le_kind,
                    const OampNle& nle, const SolverOptions& options);

/// (||y - A s||^2 - M sigma2) / tr(A^T A), floored at 1e-9 * E{X^2}.
double estimate_v2(const Eigen::VectorXd& y, const MatrixModel& a, const Eigen::VectorXd& s,
                   double sigma2);

/// tr(B B^T)/N * v2_hat + tr(W W^T)/N * sigma2.
double estimate_tau2(const DecorrelatedLE& le, double v2_hat, double sigma2);

/// Orthogonality record for one iteration, h = r - x, q = s - x.
struct ErrorDiagnostics {
  double v2_true = 0.0;
  double tau2_true = 0.0;
  double orth_hq = 0.0;
  double orth_hx = 0.0;
};

ErrorDiagnostics error_diagnostics(const Eigen::VectorXd& r, const Eigen::VectorXd& s,
                                   const Eigen::VectorXd& x_true);

}  // namespace oamp
