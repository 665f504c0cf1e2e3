#pragma once

#include <Eigen/Core>

#include <functional>

#include "oamp/model.hpp"

namespace oamp {

/// Threshold schedule for soft thresholding: a fixed value, or a multiple
/// of the current noise level tau.
struct GammaRule {
  enum class Kind { Fixed, TauScaled };
  Kind kind = Kind::TauScaled;
  double value = 1.0;

  static GammaRule fixed(double gamma) { return {Kind::Fixed, gamma}; }
  static GammaRule tau_scaled(double factor = 1.0) { return {Kind::TauScaled, factor}; }

  double gamma(double tau2) const;
};

double soft_threshold(double r, double gamma);

/// Posterior mean E{X | X + tau Z = r} and variance var{X | r} under the
/// additive Gaussian model; closed forms for both priors.
double posterior_mean(const Prior& prior, double r, double tau2);
double posterior_var(const Prior& prior, double r, double tau2);

/// E{g(R)} over the marginal of R = X + tau Z; the prior's discrete mass is
/// split exactly and each Gaussian branch integrated adaptively.
double prior_r_expect(const Prior& prior, double tau2,
                      const std::function<double(double)>& g, int min_panels = 8);

/// mmse_B(tau2) = E{var{X|R}}; adaptive quadrature over the mixture
/// branches, discrete prior mass handled exactly. order >= 3.
double mmse_b(const Prior& prior, double tau2, int quad_order = 61);

/// C* = tau2 / (tau2 - mmse_B); requires 0 < mmse_b_value < tau2.
double optimal_c(double tau2, double mmse_b_value);

/// Scalar estimator family: r -> eta_hat(r; tau2) with its derivative.
class Denoiser {
 public:
  enum class Kind { PosteriorMean, SoftThreshold };

  static Denoiser posterior_mean_for(const Prior& prior);
  static Denoiser soft_thresholding(GammaRule rule);

  double eval(double r, double tau2) const;
  double deriv(double r, double tau2) const;

  Kind kind() const { return kind_; }
  const Prior& prior() const { return prior_; }
  const GammaRule& gamma_rule() const { return gamma_; }

 private:
  Kind kind_ = Kind::PosteriorMean;
  Prior prior_;
  GammaRule gamma_;
};

/// Scale rule for the divergence-free wrapper.
struct CRule {
  enum class Kind { Fixed, Optimal };
  Kind kind = Kind::Optimal;
  double value = 1.0;

  static CRule fixed(double c) { return {Kind::Fixed, c}; }
  static CRule optimal() { return {Kind::Optimal, 1.0}; }
};

/// Divergence-free wrapper eta(r) = C * (eta_hat(r) - dbar * r) with the
/// empirical divergence dbar = mean(eta_hat'(r_j)).
struct DFDenoiser {
  Denoiser base;
  CRule c_rule;
};

struct DFApplyResult {
  Eigen::VectorXd s;
  double dbar = 0.0;  // empirical divergence of the base denoiser
  double c = 1.0;     // realized scale
};

/// Applies the DF wrapper; the empirical divergence of the composed map is
/// identically zero by construction. Optimal C is 1 / (1 - dbar), which
/// equals tau2 / (tau2 - mmse_B) with the realization-level mmse_B
/// estimate; throws std::domain_error when dbar >= 1.
DFApplyResult df_apply(const DFDenoiser& df, const Eigen::VectorXd& r, double tau2);

struct BetaApplyResult {
  Eigen::VectorXd s;
  double dbar_hat = 0.0;       // mean(eta_hat'(r_j))
  double dbar_composed = 0.0;  // beta * dbar_hat, divergence of the composed map
};

/// eta(r) = eta_hat(r) - (1 - beta) * dbar * r. beta = 1 is the plain base
/// denoiser; beta = 0 is divergence-free (up to scale).
BetaApplyResult beta_family(const Eigen::VectorXd& r, double beta, const Denoiser& base,
                            double tau2);

/// Nonlinear stage for AMP: the posterior-mean denoiser, or the
/// soft-threshold beta family with a fixed threshold.
struct AmpNle {
  enum class Kind { PosteriorMean, BetaFamily };
  Kind kind = Kind::PosteriorMean;
  Prior prior;        // PosteriorMean
  double beta = 1.0;  // BetaFamily
  double gamma = 1.0;

  static AmpNle posterior_mean(const Prior& prior) { return {Kind::PosteriorMean, prior, 1, 1}; }
  static AmpNle beta_family(double beta, double gamma = 1.0) {
    return {Kind::BetaFamily, Prior{}, beta, gamma};
  }
};

/// Nonlinear stage for OAMP: divergence-free wrapper plus output denoiser.
/// MmseOptimal uses the posterior mean with the optimal C and the posterior
/// mean as output; SoftThreshold uses a fixed C and the plain threshold as
/// output.
struct OampNle {
  enum class Kind { MmseOptimal, SoftThreshold };
  Kind kind = Kind::MmseOptimal;
  Prior prior;
  double c = 1.0;
  GammaRule gamma = GammaRule::tau_scaled();

  static OampNle mmse_optimal(const Prior& prior) { return {Kind::MmseOptimal, prior, 1.0, {}}; }
  static OampNle soft_thresholding(double c, GammaRule gamma) {
    return {Kind::SoftThreshold, Prior{}, c, gamma};
  }
};

}  // namespace oamp
