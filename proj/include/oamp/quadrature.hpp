#pragma once

#include <Eigen/Core>

#include <functional>

namespace oamp {

/// Gauss-Hermite rule rewritten for standard-normal expectations:
/// E{f(Z)} ~= sum_i weights[i] * f(nodes[i]) with Z ~ N(0,1), sum(weights) = 1.
struct GaussHermite {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Rule of the given order, computed by Golub-Welsch and cached. order >= 3.
const GaussHermite& gauss_hermite(int order);

/// E{f(Z)}, Z ~ N(0,1).
template <typename F>
double normal_expect(int order, F&& f) {
  const GaussHermite& gh = gauss_hermite(order);
  double acc = 0.0;
  for (int i = 0; i < gh.nodes.size(); ++i) acc += gh.weights[i] * f(gh.nodes[i]);
  return acc;
}

/// Adaptive Gauss-Kronrod 15(7) on [a, b]; recursion splits panels until
/// the embedded error estimate meets tol (mixed absolute/relative).
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-12, int max_depth = 48);

/// E{g(R)} for R ~ N(mean, variance), truncated at 12 sigma. The base grid
/// is pre-split down to feature_scale so that structure much narrower than
/// sigma (posterior transitions at small tau2) cannot slip between the
/// nodes of a wide panel; min_panels forces extra base subdivisions.
double gaussian_expect_adaptive(const std::function<double(double)>& g, double mean,
                                double variance, double feature_scale,
                                double tol = 1e-12, int min_panels = 8);

/// Moments of the soft-threshold map s(r) = sign(r) * max(|r| - gamma, 0)
/// under R ~ N(mu, omega2). Everything is in closed form via erfc, so these
/// stay exact where Gauss-Hermite struggles with the kinks at |r| = gamma.
struct SoftThresholdMoments {
  double p_active;  // P(|R| > gamma) = E{s'(R)}
  double m1;        // E{s(R)}
  double m1r;       // E{s(R) * R}
  double m2;        // E{s(R)^2}
};

SoftThresholdMoments soft_threshold_moments(double mu, double omega2, double gamma);

/// Standard normal pdf and upper tail.
double normal_pdf(double x);
double normal_upper_tail(double x);

}  // namespace oamp
