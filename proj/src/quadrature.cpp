#include "oamp/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace oamp {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrtPi = 1.7724538509055160273;

GaussHermite build_rule(int order) {
  // Golub-Welsch on the Hermite Jacobi matrix: off-diagonals sqrt(i/2),
  // eigenvalues are the physicists' nodes, weights from first components.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int i = 1; i < order; ++i) {
    const double b = std::sqrt(i / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermite rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    const double w = kSqrtPi * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    rule.nodes[i] = kSqrt2 * es.eigenvalues()[i];  // z = sqrt(2) x
    rule.weights[i] = w / kSqrtPi;                 // normalized to sum 1
  }
  return rule;
}
}  // namespace

const GaussHermite& gauss_hermite(int order) {
  if (order < 3) throw std::invalid_argument("gauss_hermite: order must be >= 3");
  static std::map<int, GaussHermite> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

namespace {

// QUADPACK 15-point Kronrod rule with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                            0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                            0.2077849550078985, 0.0};
constexpr double kWgk[8] = {0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
                            0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                            0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                           0.4179591836734694};

struct PanelResult {
  double kronrod;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double gauss = kWg[3] * fc;
  double kronrod = kWgk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

double adaptive_panel(const std::function<double(double)>& f, double a, double b,
                      double tol, int depth) {
  const PanelResult res = gk15(f, a, b);
  if (depth <= 0 || res.error <= tol * std::max(1.0, std::abs(res.kronrod))) return res.kronrod;
  const double mid = 0.5 * (a + b);
  return adaptive_panel(f, a, mid, 0.5 * tol, depth - 1) +
         adaptive_panel(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth) {
  if (!(b > a)) return 0.0;
  return adaptive_panel(f, a, b, tol, max_depth);
}

double gaussian_expect_adaptive(const std::function<double(double)>& g, double mean,
                                double variance, double feature_scale, double tol,
                                int min_panels) {
  const double sigma = std::sqrt(variance);
  const double lo = mean - 12.0 * sigma;
  const double hi = mean + 12.0 * sigma;
  const double span = hi - lo;
  double width = sigma;
  if (feature_scale > 0.0) width = std::min(width, feature_scale);
  int panels = int(std::ceil(span / width));
  panels = std::clamp(panels, min_panels, 4096);
  const double inv_norm = 1.0 / (sigma * kSqrt2 * kSqrtPi);
  auto integrand = [&](double r) {
    const double z = (r - mean) / sigma;
    return g(r) * std::exp(-0.5 * z * z) * inv_norm;
  };
  double acc = 0.0;
  const double panel_tol = tol / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + span * i / panels;
    const double b = lo + span * (i + 1) / panels;
    acc += adaptive_integrate(integrand, a, b, panel_tol, 24);
  }
  return acc;
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / (kSqrt2 * kSqrtPi);
}

double normal_upper_tail(double x) {
  return 0.5 * std::erfc(x / kSqrt2);
}

SoftThresholdMoments soft_threshold_moments(double mu, double omega2, double gamma) {
  const double omega = std::sqrt(omega2);
  // Upper branch R > gamma, standardized threshold a; lower branch R < -gamma.
  const double a = (gamma - mu) / omega;
  const double b = (gamma + mu) / omega;
  const double qa = normal_upper_tail(a);
  const double qb = normal_upper_tail(b);
  const double pa = normal_pdf(a);
  const double pb = normal_pdf(b);

  // E{(R-gamma)^k 1{R>gamma}} for k = 1,2.
  const double up1 = omega * pa + (mu - gamma) * qa;
  const double up2 = omega2 * (a * pa + qa) + 2.0 * omega * (mu - gamma) * pa +
                     (mu - gamma) * (mu - gamma) * qa;
  // E{(R+gamma)^k 1{R<-gamma}}; reflect R -> -R which has mean -mu.
  const double lo1 = -(omega * pb + (-mu - gamma) * qb);
  const double lo2 = omega2 * (b * pb + qb) + 2.0 * omega * (-mu - gamma) * pb +
                     (mu + gamma) * (mu + gamma) * qb;

  SoftThresholdMoments out;
  out.p_active = qa + qb;
  out.m1 = up1 + lo1;
  out.m2 = up2 + lo2;
  // s*r = (r-gamma)^2 + gamma(r-gamma) above, (r+gamma)^2 - gamma(r+gamma) below.
  out.m1r = up2 + gamma * up1 + lo2 - gamma * lo1;
  return out;
}

}  // namespace oamp
