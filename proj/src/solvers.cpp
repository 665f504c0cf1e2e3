#include "oamp/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace oamp {

namespace {

constexpr double kV2Floor = 1e-9;    // 1e-9 * E{X^2}
constexpr double kTau2Floor = 1e-30;

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

double estimate_v2(const Eigen::VectorXd& y, const MatrixModel& a, const Eigen::VectorXd& s,
                   double sigma2) {
  const double tr = a.trace_gram();
  if (!(tr > 0.0)) throw std::invalid_argument("estimate_v2: tr(A^T A) must be > 0");
  const double resid2 = (y - a.apply(s)).squaredNorm();
  return std::max((resid2 - a.rows() * sigma2) / tr, kV2Floor);
}

double estimate_tau2(const DecorrelatedLE& le, double v2_hat, double sigma2) {
  if (!(v2_hat >= 0.0)) throw std::invalid_argument("estimate_tau2: v2_hat must be >= 0");
  return le.tr_bb_over_n() * v2_hat + le.tr_ww_over_n() * sigma2;
}

ErrorDiagnostics error_diagnostics(const Eigen::VectorXd& r, const Eigen::VectorXd& s,
                                   const Eigen::VectorXd& x_true) {
  const double n = double(x_true.size());
  const Eigen::VectorXd h = r - x_true;
  const Eigen::VectorXd q = s - x_true;
  ErrorDiagnostics d;
  d.v2_true = q.squaredNorm() / n;
  d.tau2_true = h.squaredNorm() / n;
  d.orth_hq = h.dot(q) / n;
  d.orth_hx = h.dot(x_true) / n;
  return d;
}

Trajectory run_amp(const LinearSystem& system, const AmpNle& nle, const SolverOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("run_amp: iterations must be >= 1");
  const MatrixModel& a = system.model;
  const int n = a.cols();
  const int m = a.rows();
  const double ratio = double(n) / m;

  Trajectory traj;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z;  // Onsager-corrected residual, A^T z = r - s
  double onsager_gain = 0.0;  // dbar of the previous composed denoiser
  double v2_hat_prev = -1.0;

  Denoiser soft = Denoiser::soft_thresholding(GammaRule::fixed(nle.gamma));

  for (int t = 0; t < options.iterations; ++t) {
    const Eigen::VectorXd resid = system.y - a.apply(s);
    const double v2_hat = estimate_v2(system.y, a, s, system.sigma2);
    // The raw residual power overshoots tau2 for AMP (the estimate s is
    // correlated with A mid-run); the corrected residual tracks it.
    if (t == 0 || onsager_gain == 0.0) z = resid;
    else z = resid + ratio * onsager_gain * z;
    const double tau2_hat = std::max(z.squaredNorm() / m, kTau2Floor);

    Eigen::VectorXd r = s + a.apply_transpose(z);

    Eigen::VectorXd s_next;
    double dbar_base = 0.0;
    if (nle.kind == AmpNle::Kind::PosteriorMean) {
      s_next.resize(n);
      double dsum = 0.0;
      for (int j = 0; j < n; ++j) {
        s_next[j] = posterior_mean(nle.prior, r[j], tau2_hat);
        dsum += posterior_var(nle.prior, r[j], tau2_hat) / tau2_hat;
      }
      dbar_base = dsum / n;
      onsager_gain = dbar_base;
    } else {
      BetaApplyResult res = beta_family(r, nle.beta, soft, tau2_hat);
      s_next = std::move(res.s);
      dbar_base = res.dbar_hat;
      onsager_gain = res.dbar_composed;
    }

    traj.v2_hat.push_back(v2_hat);
    traj.tau2_hat.push_back(tau2_hat);
    traj.dbar.push_back(dbar_base);
    if (system.x_true) {
      const ErrorDiagnostics d = error_diagnostics(r, s, *system.x_true);
      traj.v2_true.push_back(d.v2_true);
      traj.tau2_true.push_back(d.tau2_true);
      traj.orth_hq.push_back(d.orth_hq);
      traj.orth_hx.push_back(d.orth_hx);
      traj.mse_out.push_back((s_next - *system.x_true).squaredNorm() / n);
    } else {
      traj.mse_out.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    if (!all_finite(r) || !all_finite(s_next)) {
      traj.status = Trajectory::Status::Diverged;
      traj.x_hat = s;
      return traj;
    }

    s = std::move(s_next);

    if (options.early_stop_tol > 0.0 && v2_hat_prev >= 0.0 &&
        std::abs(v2_hat - v2_hat_prev) < options.early_stop_tol) {
      traj.early_stopped = true;
      break;
    }
    v2_hat_prev = v2_hat;
  }
  traj.x_hat = std::move(s);
  return traj;
}

Trajectory run_oamp(const LinearSystem& system, LinearEstimatorKind le_kind,
                    const OampNle& nle, const SolverOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("run_oamp: iterations must be >= 1");
  const MatrixModel& a = system.model;
  const int n = a.cols();

  Trajectory traj;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd out;
  double v2_hat = 1.0;  // E{X^2}

  const Denoiser base = nle.kind == OampNle::Kind::MmseOptimal
                            ? Denoiser::posterior_mean_for(nle.prior)
                            : Denoiser::soft_thresholding(nle.gamma);
  const DFDenoiser df{base, nle.kind == OampNle::Kind::MmseOptimal ? CRule::optimal()
                                                                   : CRule::fixed(nle.c)};

  for (int t = 0; t < options.iterations; ++t) {
    const DecorrelatedLE le = decorrelated_le(le_kind, a, v2_hat, system.sigma2);
    const Eigen::VectorXd resid = system.y - a.apply(s);
    const Eigen::VectorXd r = s + le.apply(resid);
    const double tau2_hat = std::max(estimate_tau2(le, v2_hat, system.sigma2), kTau2Floor);

    // The output denoiser coincides with the base estimator for both NLE
    // kinds; the DF feedback is formed from the same evaluations.
    out.resize(n);
    double dsum = 0.0;
    for (int j = 0; j < n; ++j) {
      out[j] = base.eval(r[j], tau2_hat);
      dsum += base.deriv(r[j], tau2_hat);
    }
    const double dbar = dsum / n;

    traj.v2_hat.push_back(v2_hat);
    traj.tau2_hat.push_back(tau2_hat);
    traj.dbar.push_back(dbar);
    if (system.x_true) {
      const ErrorDiagnostics d = error_diagnostics(r, s, *system.x_true);
      traj.v2_true.push_back(d.v2_true);
      traj.tau2_true.push_back(d.tau2_true);
      traj.orth_hq.push_back(d.orth_hq);
      traj.orth_hx.push_back(d.orth_hx);
      traj.mse_out.push_back((out - *system.x_true).squaredNorm() / n);
    } else {
      traj.mse_out.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    double c = 1.0;
    if (df.c_rule.kind == CRule::Kind::Optimal) {
      if (!(dbar < 1.0)) {  // empirical mmse_B >= tau2: optimal C undefined
        traj.status = Trajectory::Status::DegenerateC;
        break;
      }
      c = 1.0 / (1.0 - dbar);
    } else {
      c = df.c_rule.value;
    }
    Eigen::VectorXd s_next = c * (out - dbar * r);

    if (!all_finite(r) || !all_finite(s_next)) {
      traj.status = Trajectory::Status::Diverged;
      break;
    }

    s = std::move(s_next);
    const double v2_next = estimate_v2(system.y, a, s, system.sigma2);
    if (options.early_stop_tol > 0.0 && std::abs(v2_next - v2_hat) < options.early_stop_tol) {
      traj.early_stopped = true;
      v2_hat = v2_next;
      break;
    }
    v2_hat = v2_next;
  }
  traj.x_hat = out.size() ? std::move(out) : Eigen::VectorXd::Zero(n).eval();
  return traj;
}

}  // namespace oamp
