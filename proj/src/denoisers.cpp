#include "oamp/denoisers.hpp"

#include <cmath>
#include <stdexcept>

#include "oamp/quadrature.hpp"

namespace oamp {

namespace {

void require_tau2(double tau2) {
  if (!(tau2 > 0.0)) throw std::domain_error("denoiser: tau2 must be > 0");
}

double sech2(double u) {
  const double e = std::exp(-2.0 * std::abs(u));
  const double denom = 1.0 + e;
  return 4.0 * e / (denom * denom);
}

// Bernoulli-Gaussian posterior pieces under R = X + tau Z. pi is the slab
// responsibility, alpha the slab shrink factor.
struct BgPosterior {
  double pi;
  double alpha;
};

BgPosterior bg_posterior(const Prior& prior, double r, double tau2) {
  const double vx = prior.slab_variance();
  const double alpha = vx / (vx + tau2);
  // log f0/f1 with f0 = N(r; 0, tau2), f1 = N(r; 0, vx + tau2).
  const double log_ratio = 0.5 * std::log((vx + tau2) / tau2) - r * r * alpha / (2.0 * tau2);
  const double odds = (1.0 - prior.rho) / prior.rho * std::exp(log_ratio);
  return {1.0 / (1.0 + odds), alpha};
}

}  // namespace

double GammaRule::gamma(double tau2) const {
  return kind == Kind::Fixed ? value : value * std::sqrt(tau2);
}

double soft_threshold(double r, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("soft_threshold: gamma must be >= 0");
  return std::copysign(std::max(std::abs(r) - gamma, 0.0), r);
}

double posterior_mean(const Prior& prior, double r, double tau2) {
  require_tau2(tau2);
  if (prior.kind == PriorKind::BPSK) return std::tanh(r / tau2);
  const auto [pi, alpha] = bg_posterior(prior, r, tau2);
  return pi * alpha * r;
}

double posterior_var(const Prior& prior, double r, double tau2) {
  require_tau2(tau2);
  if (prior.kind == PriorKind::BPSK) return sech2(r / tau2);
  const auto [pi, alpha] = bg_posterior(prior, r, tau2);
  const double m1 = alpha * r;
  const double s1 = alpha * tau2;
  return pi * s1 + pi * (1.0 - pi) * m1 * m1;
}

double prior_r_expect(const Prior& prior, double tau2,
                      const std::function<double(double)>& g, int min_panels) {
  // Expectation of g(R) over the marginal of R = X + tau Z, split by the
  // prior's mixture branches. The posterior transition features live on the
  // tau2 scale, much narrower than the branch sigmas at small tau2, hence
  // the feature-scaled base grid.
  const double feature = std::min(tau2, std::sqrt(tau2));
  if (prior.kind == PriorKind::BPSK) {
    const double plus = gaussian_expect_adaptive(g, 1.0, tau2, feature, 1e-12, min_panels);
    const double minus = gaussian_expect_adaptive(g, -1.0, tau2, feature, 1e-12, min_panels);
    return 0.5 * (plus + minus);
  }
  const double spike = gaussian_expect_adaptive(g, 0.0, tau2, feature, 1e-12, min_panels);
  const double slab = gaussian_expect_adaptive(g, 0.0, prior.slab_variance() + tau2, feature,
                                               1e-12, min_panels);
  return (1.0 - prior.rho) * spike + prior.rho * slab;
}

double mmse_b(const Prior& prior, double tau2, int quad_order) {
  require_tau2(tau2);
  if (quad_order < 3) throw std::invalid_argument("mmse_b: quadrature order must be >= 3");
  return prior_r_expect(
      prior, tau2, [&](double r) { return posterior_var(prior, r, tau2); }, quad_order / 8 + 4);
}

double optimal_c(double tau2, double mmse_b_value) {
  if (!(mmse_b_value > 0.0) || !(mmse_b_value < tau2))
    throw std::domain_error("optimal_c: need 0 < mmse_B < tau2");
  return tau2 / (tau2 - mmse_b_value);
}

Denoiser Denoiser::posterior_mean_for(const Prior& prior) {
  Denoiser d;
  d.kind_ = Kind::PosteriorMean;
  d.prior_ = prior;
  return d;
}

Denoiser Denoiser::soft_thresholding(GammaRule rule) {
  Denoiser d;
  d.kind_ = Kind::SoftThreshold;
  d.gamma_ = rule;
  return d;
}

double Denoiser::eval(double r, double tau2) const {
  if (kind_ == Kind::PosteriorMean) return posterior_mean(prior_, r, tau2);
  return soft_threshold(r, gamma_.gamma(tau2));
}

double Denoiser::deriv(double r, double tau2) const {
  if (kind_ == Kind::PosteriorMean) return posterior_var(prior_, r, tau2) / tau2;
  // Indicator derivative; the kink at |r| = gamma is assigned 0.
  return std::abs(r) > gamma_.gamma(tau2) ? 1.0 : 0.0;
}

DFApplyResult df_apply(const DFDenoiser& df, const Eigen::VectorXd& r, double tau2) {
  const int n = int(r.size());
  DFApplyResult out;
  out.s.resize(n);
  double dsum = 0.0;
  for (int j = 0; j < n; ++j) {
    out.s[j] = df.base.eval(r[j], tau2);
    dsum += df.base.deriv(r[j], tau2);
  }
  out.dbar = dsum / n;
  if (df.c_rule.kind == CRule::Kind::Optimal) {
    if (!(out.dbar < 1.0))
      throw std::domain_error("df_apply: empirical mmse_B >= tau2, optimal C undefined");
    out.c = 1.0 / (1.0 - out.dbar);
  } else {
    out.c = df.c_rule.value;
  }
  out.s = out.c * (out.s - out.dbar * r);
  return out;
}

BetaApplyResult beta_family(const Eigen::VectorXd& r, double beta, const Denoiser& base,
                            double tau2) {
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta_family: beta must be in [0, 1]");
  const int n = int(r.size());
  BetaApplyResult out;
  out.s.resize(n);
  double dsum = 0.0;
  for (int j = 0; j < n; ++j) {
    out.s[j] = base.eval(r[j], tau2);
    dsum += base.deriv(r[j], tau2);
  }
  out.dbar_hat = dsum / n;
  out.dbar_composed = beta * out.dbar_hat;
  out.s -= (1.0 - beta) * out.dbar_hat * r;
  return out;
}

}  // namespace oamp
