#include "oamp/sevo.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "oamp/quadrature.hpp"

namespace oamp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre rule on [-1, 1] via Golub-Welsch; only used to set up the
// Marchenko-Pastur bulk quadrature.
void gauss_legendre(int order, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  nodes = es.eigenvalues();
  weights.resize(order);
  for (int i = 0; i < order; ++i)
    weights[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
}

}  // namespace

SpectralModel SpectralModel::from_spectrum(Eigen::VectorXd lambda2) {
  if (lambda2.size() < 1 || lambda2.minCoeff() < 0.0)
    throw std::invalid_argument("SpectralModel: eigenvalues must be >= 0");
  SpectralModel s;
  s.kind_ = Kind::Empirical;
  s.lambda2_ = std::move(lambda2);
  return s;
}

SpectralModel SpectralModel::from_model(const MatrixModel& model) {
  return from_spectrum(model.spectrum());
}

SpectralModel SpectralModel::partial_orthogonal_asymptotic(double delta) {
  if (!(delta >= 1.0)) throw std::invalid_argument("SpectralModel: delta must be >= 1");
  SpectralModel s;
  s.kind_ = Kind::PartialTag;
  s.delta_ = delta;
  return s;
}

SpectralModel SpectralModel::iid_gaussian_asymptotic(double delta) {
  if (!(delta >= 1.0)) throw std::invalid_argument("SpectralModel: delta must be >= 1");
  SpectralModel s;
  s.kind_ = Kind::MPTag;
  s.delta_ = delta;
  // Bulk of the A A^T law on [a, b], a = (sqrt(delta)-1)^2, b = (sqrt(delta)+1)^2,
  // density sqrt((b-x)(x-a)) / (2 pi x). The substitution x = a + (b-a) sin^2(theta)
  // removes both edge singularities.
  const double sd = std::sqrt(delta);
  const double a = (sd - 1.0) * (sd - 1.0);
  const double b = (sd + 1.0) * (sd + 1.0);
  const int order = 400;
  Eigen::VectorXd t, w;
  gauss_legendre(order, t, w);
  s.bulk_nodes_.resize(order);
  s.bulk_weights_.resize(order);
  for (int i = 0; i < order; ++i) {
    const double theta = kPi / 4.0 * (t[i] + 1.0);
    const double st = std::sin(theta);
    const double x = a + (b - a) * st * st;
    const double s2t = std::sin(2.0 * theta);
    s.bulk_nodes_[i] = x;
    s.bulk_weights_[i] = w[i] * (kPi / 4.0) * (b - a) * (b - a) * s2t * s2t / (4.0 * kPi * x);
  }
  // Normalize away the residual quadrature error so expect(1) == 1 exactly.
  s.bulk_weights_ /= s.bulk_weights_.sum();
  return s;
}

double SpectralModel::expect(const std::function<double(double)>& f) const {
  switch (kind_) {
    case Kind::Empirical: {
      double acc = 0.0;
      for (int i = 0; i < lambda2_.size(); ++i) acc += f(lambda2_[i]);
      return acc / double(lambda2_.size());
    }
    case Kind::PartialTag:
      return (1.0 - 1.0 / delta_) * f(0.0) + (1.0 / delta_) * f(delta_);
    case Kind::MPTag: {
      double acc = 0.0;
      for (int i = 0; i < bulk_nodes_.size(); ++i) acc += bulk_weights_[i] * f(bulk_nodes_[i]);
      return (1.0 - 1.0 / delta_) * f(0.0) + (1.0 / delta_) * acc;
    }
  }
  return 0.0;
}

const Eigen::VectorXd& SpectralModel::lambda2() const {
  if (kind_ != Kind::Empirical)
    throw std::logic_error("SpectralModel: no empirical spectrum for asymptotic tags");
  return lambda2_;
}

double SpectralModel::mean_lambda2() const {
  return expect([](double d) { return d; });
}

double mmse_a(const SpectralModel& spec, double v2, double sigma2) {
  if (!(v2 > 0.0)) throw std::domain_error("mmse_a: v2 must be > 0");
  return spec.expect([&](double d) {
    if (d == 0.0) return v2;
    return sigma2 * v2 / (v2 * d + sigma2);
  });
}

namespace {
// E{v2 lambda^2 / (v2 lambda^2 + sigma2)} = (v2 - mmse_A)/v2 without the
// cancellation.
double interference_fraction(const SpectralModel& spec, double v2, double sigma2) {
  return spec.expect([&](double d) {
    const double num = v2 * d;
    return num > 0.0 ? num / (num + sigma2) : 0.0;
  });
}
}  // namespace

double phi_star(const SpectralModel& spec, double v2, double sigma2) {
  const double u = interference_fraction(spec, v2, sigma2);
  if (!(u > 0.0)) throw std::domain_error("phi_star: degenerate spectrum (mmse_A >= v2)");
  return mmse_a(spec, v2, sigma2) / u;
}

double psi_star(const Prior& prior, double tau2) {
  const double mb = mmse_b(prior, tau2);
  if (mb <= 0.0) return 0.0;
  if (!(mb < tau2)) throw std::domain_error("psi_star: mmse_B >= tau2");
  return mb * tau2 / (tau2 - mb);
}

double psi_out_star(const Prior& prior, double tau2) { return mmse_b(prior, tau2); }

double phi_empirical(const SpectralModel& spec, const Eigen::VectorXd& ghat,
                     double v2, double sigma2) {
  const Eigen::VectorXd& d = spec.lambda2();
  if (ghat.size() != d.size())
    throw std::invalid_argument("phi_empirical: ghat must align with the spectrum");
  const double n = double(d.size());
  double m11 = 0.0, m22 = 0.0, m20 = 0.0;
  for (int i = 0; i < d.size(); ++i) {
    const double lam = std::sqrt(d[i]);
    m11 += ghat[i] * lam;
    m22 += ghat[i] * ghat[i] * d[i];
    m20 += ghat[i] * ghat[i];
  }
  m11 /= n;
  m22 /= n;
  m20 /= n;
  if (m11 == 0.0) throw std::domain_error("phi_empirical: tr(What A) = 0");
  return (m22 / (m11 * m11) - 1.0) * v2 + (m20 / (m11 * m11)) * sigma2;
}

namespace {

double ghat_value(LinearEstimatorKind kind, double d, double v2, double sigma2, double dmax) {
  const double lam = std::sqrt(d);
  switch (kind) {
    case LinearEstimatorKind::MF:
      return lam;
    case LinearEstimatorKind::PINV:
      if (d <= 1e-12 * dmax) return 0.0;
      return 1.0 / lam;
    case LinearEstimatorKind::LMMSE:
      return v2 * lam / (v2 * d + sigma2);
  }
  return 0.0;
}

}  // namespace

Eigen::VectorXd ghat_for_kind(const SpectralModel& spec, LinearEstimatorKind kind,
                              double v2, double sigma2) {
  const Eigen::VectorXd& d = spec.lambda2();
  const double dmax = d.maxCoeff();
  Eigen::VectorXd g(d.size());
  for (int i = 0; i < d.size(); ++i) g[i] = ghat_value(kind, d[i], v2, sigma2, dmax);
  return g;
}

double phi_kind(const SpectralModel& spec, LinearEstimatorKind kind, double v2, double sigma2) {
  if (spec.is_empirical())
    return phi_empirical(spec, ghat_for_kind(spec, kind, v2, sigma2), v2, sigma2);
  const double m11 = spec.expect([&](double d) {
    return ghat_value(kind, d, v2, sigma2, 1.0) * std::sqrt(d);
  });
  const double m22 = spec.expect([&](double d) {
    const double g = ghat_value(kind, d, v2, sigma2, 1.0);
    return g * g * d;
  });
  const double m20 = spec.expect([&](double d) {
    const double g = ghat_value(kind, d, v2, sigma2, 1.0);
    return g * g;
  });
  if (m11 == 0.0) throw std::domain_error("phi_kind: tr(What A) = 0");
  return (m22 / (m11 * m11) - 1.0) * v2 + (m20 / (m11 * m11)) * sigma2;
}

double phi_closed_form(PhiClosedFormKind kind, double delta, double v2, double sigma2) {
  switch (kind) {
    case PhiClosedFormKind::MF:
      return delta * v2 + sigma2;
    case PhiClosedFormKind::PINV:
      if (delta > 1.0) return (delta - 1.0) * v2 + delta / (delta - 1.0) * sigma2;
      if (delta < 1.0) return sigma2 / (1.0 - delta);  // M > N branch
      throw std::domain_error("phi_closed_form: PINV undefined at M = N");
    case PhiClosedFormKind::LMMSE: {
      const double c = delta - 1.0;
      const double base = sigma2 + c * v2;
      return 0.5 * (base + std::sqrt(base * base + 4.0 * sigma2 * v2));
    }
    case PhiClosedFormKind::PartialOrtho:
      return (delta - 1.0) * v2 + sigma2;
  }
  throw std::logic_error("phi_closed_form: unknown kind");
}

double se_accuracy(double mse_sim, double mse_se) {
  return std::abs(mse_sim - mse_se) / mse_sim;
}

SEState run_se(const SeMaps& maps, int iterations, double v2_start) {
  if (iterations < 1) throw std::invalid_argument("run_se: iterations must be >= 1");
  // v2 is floored far below anything observable so the limit forms of the
  // maps stay evaluable (ratios of spectral moments underflow below ~1e-150).
  constexpr double kV2Floor = 1e-150;
  SEState state;
  state.v2.push_back(v2_start);
  double v2 = std::max(v2_start, kV2Floor);
  for (int t = 0; t < iterations; ++t) {
    const double tau2 = maps.phi(v2);
    const double v2_next = std::max(tau2 > 0.0 ? maps.psi(tau2) : 0.0, kV2Floor);
    state.tau2.push_back(tau2);
    state.mse_out.push_back(tau2 > 0.0 ? maps.psi_out(tau2) : 0.0);
    state.v2.push_back(v2_next);
    if (std::abs(v2_next - v2) < 1e-12) state.converged = true;
    v2 = v2_next;
  }
  state.v2_fixed = state.v2.back();
  state.tau2_fixed = state.tau2.back();
  return state;
}

namespace {

// Branch decomposition of R = X + tau Z used by the closed-form soft
// threshold maps: X = const within a branch, or jointly Gaussian with R.
struct PsiAccumulator {
  double psi = 0.0;
  double divergence = 0.0;
};

PsiAccumulator psi_soft_accumulate(const Prior& prior, double tau2, double gamma,
                                   double c, double d_eff) {
  PsiAccumulator acc;
  auto const_branch = [&](double w, double mu_r, double x) {
    const SoftThresholdMoments mom = soft_threshold_moments(mu_r, tau2, gamma);
    const double er2 = tau2 + mu_r * mu_r;
    const double e_eta = c * (mom.m1 - d_eff * mu_r);
    const double e_eta2 = c * c * (mom.m2 - 2.0 * d_eff * mom.m1r + d_eff * d_eff * er2);
    acc.psi += w * (e_eta2 - 2.0 * x * e_eta + x * x);
    acc.divergence += w * mom.p_active;
  };
  if (prior.kind == PriorKind::BPSK) {
    const_branch(0.5, 1.0, 1.0);
    const_branch(0.5, -1.0, -1.0);
  } else {
    const_branch(1.0 - prior.rho, 0.0, 0.0);
    const double vx = prior.slab_variance();
    const double omega2 = vx + tau2;
    const double alpha = vx / omega2;
    const SoftThresholdMoments mom = soft_threshold_moments(0.0, omega2, gamma);
    const double e_eta_r = c * (mom.m1r - d_eff * omega2);
    const double e_eta2 = c * c * (mom.m2 - 2.0 * d_eff * mom.m1r + d_eff * d_eff * omega2);
    acc.psi += prior.rho * (e_eta2 - 2.0 * alpha * e_eta_r + vx);
    acc.divergence += prior.rho * mom.p_active;
  }
  return acc;
}

}  // namespace

double soft_model_divergence(const Prior& prior, double tau2, double gamma) {
  return psi_soft_accumulate(prior, tau2, gamma, 1.0, 0.0).divergence;
}

double psi_soft_df(const Prior& prior, double tau2, double gamma, double c) {
  const double d = soft_model_divergence(prior, tau2, gamma);
  return psi_soft_accumulate(prior, tau2, gamma, c, d).psi;
}

double psi_soft_beta(const Prior& prior, double tau2, double gamma, double beta) {
  const double d = soft_model_divergence(prior, tau2, gamma);
  return psi_soft_accumulate(prior, tau2, gamma, 1.0, (1.0 - beta) * d).psi;
}

double psi_out_soft(const Prior& prior, double tau2, double gamma) {
  return psi_soft_accumulate(prior, tau2, gamma, 1.0, 0.0).psi;
}

SEState se_amp(const Prior& prior, const AmpNle& nle, double delta, double sigma2,
               int iterations, AmpSeVarianceRule rule) {
  if (!(delta >= 1.0)) throw std::invalid_argument("se_amp: delta must be >= 1");
  const double coeff = rule == AmpSeVarianceRule::IidGaussian ? delta : delta - 1.0;
  SeMaps maps;
  maps.phi = [=](double v2) { return coeff * v2 + sigma2; };
  if (nle.kind == AmpNle::Kind::PosteriorMean) {
    maps.psi = [prior](double tau2) { return mmse_b(prior, tau2); };
  } else {
    maps.psi = [prior, nle](double tau2) {
      return psi_soft_beta(prior, tau2, nle.gamma, nle.beta);
    };
  }
  maps.psi_out = maps.psi;  // the AMP estimate is the NLE output itself
  return run_se(maps, iterations);
}

SEState run_se_oamp(const SpectralModel& spec, const Prior& prior, const OampSeConfig& config) {
  SeMaps maps;
  switch (config.phi) {
    case OampSeConfig::Phi::Optimal:
      maps.phi = [&spec, &config](double v2) {
        const double sigma2 = config.sigma2;
        return phi_star(spec, v2, sigma2);
      };
      break;
    case OampSeConfig::Phi::MF:
      maps.phi = [&spec, &config](double v2) {
        return phi_kind(spec, LinearEstimatorKind::MF, v2, config.sigma2);
      };
      break;
    case OampSeConfig::Phi::PINV:
      maps.phi = [&spec, &config](double v2) {
        return phi_kind(spec, LinearEstimatorKind::PINV, v2, config.sigma2);
      };
      break;
    case OampSeConfig::Phi::LMMSE:
      maps.phi = [&spec, &config](double v2) {
        return phi_kind(spec, LinearEstimatorKind::LMMSE, v2, config.sigma2);
      };
      break;
  }
  if (config.nle.kind == OampNle::Kind::MmseOptimal) {
    maps.psi = [prior](double tau2) { return psi_star(prior, tau2); };
    maps.psi_out = [prior](double tau2) { return psi_out_star(prior, tau2); };
  } else {
    const OampNle nle = config.nle;
    maps.psi = [prior, nle](double tau2) {
      return psi_soft_df(prior, tau2, nle.gamma.gamma(tau2), nle.c);
    };
    maps.psi_out = [prior, nle](double tau2) {
      return psi_out_soft(prior, tau2, nle.gamma.gamma(tau2));
    };
  }
  return run_se(maps, config.iterations);
}

double psi_quadrature(const Prior& prior, double tau2, const std::function<double(double)>& eta,
                      int order) {
  // E{(eta - X)^2} = E_R{eta^2 - 2 eta E{X|R}} + E{X^2}: the tower property
  // turns the joint expectation into a single integral over the R marginal.
  const double cross = prior_r_expect(
      prior, tau2,
      [&](double r) {
        const double e = eta(r);
        return e * e - 2.0 * e * posterior_mean(prior, r, tau2);
      },
      order / 8 + 4);
  return cross + prior.second_moment();
}

double divergence_quadrature(const Prior& prior, double tau2,
                             const std::function<double(double)>& eta_deriv, int order) {
  return prior_r_expect(prior, tau2, eta_deriv, order / 8 + 4);
}

FixedPoint fixed_point(const SpectralModel& spec, const Prior& prior, double sigma2,
                       double tol, int maxiter) {
  FixedPoint fp;
  double v2 = prior.second_moment();
  double tau2 = 0.0;
  for (int it = 0; it < maxiter; ++it) {
    tau2 = phi_star(spec, v2, sigma2);
    const double v2_next = psi_star(prior, tau2);
    fp.iterations = it + 1;
    if (v2_next <= 0.0) {
      // Noiseless-limit collapse: tau2 tends to sigma2 / E{lambda^2}.
      fp.v2 = 0.0;
      fp.tau2 = sigma2 / spec.mean_lambda2();
      fp.converged = true;
      return fp;
    }
    if (std::abs(v2_next - v2) < tol) {
      fp.v2 = v2_next;
      fp.tau2 = phi_star(spec, v2_next, sigma2);
      fp.converged = true;
      return fp;
    }
    v2 = v2_next;
  }
  fp.v2 = v2;
  fp.tau2 = tau2;
  fp.converged = false;
  return fp;
}

double eta_transform(const SpectralModel& spec, double gamma) {
  return spec.expect([&](double d) { return 1.0 / (1.0 + gamma * d); });
}

double r_transform(const SpectralModel& spec, double z) {
  if (z > 0.0) throw std::invalid_argument("r_transform: z must be <= 0");
  const double mean = spec.mean_lambda2();
  if (z >= -1e-300) return mean;  // R(0) = E{lambda^2}
  // Solve gamma * eta(gamma) = -z; the left side is increasing in gamma, so
  // bisection in log-gamma over [1e-12, 1e12] brackets any reachable z.
  const double target = -z;
  double lo = -12.0, hi = 12.0;
  auto h = [&](double lg) {
    const double g = std::pow(10.0, lg);
    return g * eta_transform(spec, g);
  };
  if (h(lo) > target || h(hi) < target)
    throw std::runtime_error("r_transform: z outside the transform's range");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < target ? lo : hi) = mid;
  }
  const double g = std::pow(10.0, 0.5 * (lo + hi));
  const double ge = g * eta_transform(spec, g);
  return 1.0 / ge - 1.0 / g;
}

double r_transform_residual(const SpectralModel& spec, const FixedPoint& fp,
                            const Prior& prior, double sigma2) {
  const double mb = mmse_b(prior, fp.tau2);
  const double r = r_transform(spec, -mb / sigma2);
  return std::abs(1.0 / fp.tau2 - r / sigma2) * fp.tau2;
}

}  // namespace oamp
