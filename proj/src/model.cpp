#include "oamp/model.hpp"

#include <cmath>
#include <stdexcept>

namespace oamp {

std::string to_string(PriorKind kind) {
  return kind == PriorKind::BPSK ? "bpsk" : "bernoulli_gaussian";
}

Prior Prior::bernoulli_gaussian(double rho) {
  if (!(rho > 0.0) || rho > 1.0)
    throw std::invalid_argument("Prior: rho must be in (0, 1]");
  return Prior{PriorKind::BernoulliGaussian, rho};
}

Eigen::VectorXd sample_signal(const Prior& prior, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_signal: n must be >= 1");
  Eigen::VectorXd x(n);
  if (prior.kind == PriorKind::BPSK) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform() < 0.5 ? 1.0 : -1.0;
  } else {
    if (!(prior.rho > 0.0) || prior.rho > 1.0)
      throw std::invalid_argument("sample_signal: rho must be in (0, 1]");
    const double amp = std::sqrt(prior.slab_variance());
    for (int i = 0; i < n; ++i)
      x[i] = rng.uniform() < prior.rho ? amp * rng.gaussian() : 0.0;
  }
  return x;
}

Eigen::VectorXd make_observation(const MatrixModel& a, const Eigen::VectorXd& x,
                                 double sigma2, Rng& rng) {
  if (x.size() != a.cols()) throw std::invalid_argument("make_observation: dimension mismatch");
  if (sigma2 < 0.0) throw std::invalid_argument("make_observation: sigma2 must be >= 0");
  Eigen::VectorXd y = a.apply(x);
  if (sigma2 > 0.0) {
    const double sigma = std::sqrt(sigma2);
    for (int i = 0; i < y.size(); ++i) y[i] += sigma * rng.gaussian();
  }
  return y;
}

Eigen::VectorXd make_observation(const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
                                 double sigma2, Rng& rng) {
  if (x.size() != a.cols()) throw std::invalid_argument("make_observation: dimension mismatch");
  if (sigma2 < 0.0) throw std::invalid_argument("make_observation: sigma2 must be >= 0");
  Eigen::VectorXd y = a * x;
  if (sigma2 > 0.0) {
    const double sigma = std::sqrt(sigma2);
    for (int i = 0; i < y.size(); ++i) y[i] += sigma * rng.gaussian();
  }
  return y;
}

double noise_variance_from_snr(const MatrixModel& a, const Prior& prior, double snr_db) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("noise_variance_from_snr: snr_db must be finite");
  return a.trace_gram() * prior.second_moment() /
         (double(a.rows()) * std::pow(10.0, snr_db / 10.0));
}

LinearSystem::LinearSystem(MatrixModel model_, Eigen::VectorXd y_, double sigma2_,
                           std::optional<Eigen::VectorXd> x_true_)
    : model(std::move(model_)), y(std::move(y_)), sigma2(sigma2_), x_true(std::move(x_true_)) {
  if (y.size() != model.rows()) throw std::invalid_argument("LinearSystem: len(y) != rows(A)");
  if (x_true && x_true->size() != model.cols())
    throw std::invalid_argument("LinearSystem: len(x_true) != cols(A)");
  if (!(sigma2 >= 0.0)) throw std::invalid_argument("LinearSystem: sigma2 must be >= 0");
}

}  // namespace oamp
