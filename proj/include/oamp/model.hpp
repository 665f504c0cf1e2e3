#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

#include "oamp/ensembles.hpp"
#include "oamp/rng.hpp"

namespace oamp {

enum class PriorKind { BPSK, BernoulliGaussian };

/// Zero-mean, unit-power signal law. BPSK puts mass 1/2 on each of {-1,+1};
/// Bernoulli-Gaussian is rho * N(0, 1/rho) + (1-rho) * delta_0.
struct Prior {
  PriorKind kind = PriorKind::BPSK;
  double rho = 1.0;

  static Prior bpsk() { return Prior{PriorKind::BPSK, 1.0}; }
  static Prior bernoulli_gaussian(double rho);

  double second_moment() const { return 1.0; }
  double slab_variance() const { return 1.0 / rho; }
};

std::string to_string(PriorKind kind);

/// IID draws from the prior. BG draws the support mask first and then the
/// Gaussian value, so the realized zero count is exactly binomial.
Eigen::VectorXd sample_signal(const Prior& prior, int n, Rng& rng);

/// y = A x + n with n ~ N(0, sigma2 I); sigma2 = 0 gives exact y = A x.
Eigen::VectorXd make_observation(const MatrixModel& a, const Eigen::VectorXd& x,
                                 double sigma2, Rng& rng);
Eigen::VectorXd make_observation(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                                 double sigma2, Rng& rng);

/// sigma2 from SNR = E{||Ax||^2} / E{||n||^2} using the realized trace:
/// sigma2 = tr(A^T A) * E{X^2} / (M * 10^(snr_db/10)).
double noise_variance_from_snr(const MatrixModel& a, const Prior& prior, double snr_db);

/// A realized instance of the linear model y = A x + n.
struct LinearSystem {
  MatrixModel model;
  Eigen::VectorXd y;
  double sigma2 = 0.0;
  std::optional<Eigen::VectorXd> x_true;

  LinearSystem(MatrixModel model_, Eigen::VectorXd y_, double sigma2_,
               std::optional<Eigen::VectorXd> x_true_ = std::nullopt);
};

}  // namespace oamp
