#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "oamp/denoisers.hpp"
#include "oamp/ensembles.hpp"
#include "oamp/linest.hpp"
#include "oamp/model.hpp"

namespace oamp {

/// Eigenvalue law of A^T A (zero eigenvalues included): an empirical
/// spectrum of length N, or one of two asymptotic families parameterized
/// by delta = N/M (Marchenko-Pastur bulk for IID Gaussian A with N(0,1/M)
/// entries, two-atom law for partial orthogonal A).
class SpectralModel {
 public:
  static SpectralModel from_spectrum(Eigen::VectorXd lambda2);
  static SpectralModel from_model(const MatrixModel& model);
  static SpectralModel iid_gaussian_asymptotic(double delta);
  static SpectralModel partial_orthogonal_asymptotic(double delta);

  /// E{f(lambda^2)}.
  double expect(const std::function<double(double)>& f) const;

  bool is_empirical() const { return kind_ == Kind::Empirical; }
  const Eigen::VectorXd& lambda2() const;
  double mean_lambda2() const;  // tr(A^T A)/N

 private:
  enum class Kind { Empirical, PartialTag, MPTag };
  Kind kind_ = Kind::Empirical;
  Eigen::VectorXd lambda2_;
  double delta_ = 1.0;
  Eigen::VectorXd bulk_nodes_, bulk_weights_;  // MP bulk quadrature
};

/// mmse_A(v2) = E{sigma2 v2 / (v2 lambda^2 + sigma2)}.
double mmse_a(const SpectralModel& spec, double v2, double sigma2);

/// Optimal LE map Phi*(v2) = (1/mmse_A - 1/v2)^(-1), evaluated in the
/// cancellation-free form mmse_A / E{v2 lambda^2 / (v2 lambda^2 + sigma2)}.
double phi_star(const SpectralModel& spec, double v2, double sigma2);

/// Optimal NLE maps Psi*(tau2) = (1/mmse_B - 1/tau2)^(-1) and
/// Psi_out*(tau2) = mmse_B(tau2).
double psi_star(const Prior& prior, double tau2);
double psi_out_star(const Prior& prior, double tau2);

/// Empirical LE map: tau2 = (m22/m11^2 - 1) v2 + (m20/m11^2) sigma2 with
/// m22 = mean(g^2 lambda^2), m11 = mean(g lambda), m20 = mean(g^2), means
/// over all N entries.
double phi_empirical(const SpectralModel& spec, const Eigen::VectorXd& ghat,
                     double v2, double sigma2);

/// Singular values of What for the given estimator kind on this spectrum,
/// zero-padded and aligned with spec.lambda2().
Eigen::VectorXd ghat_for_kind(const SpectralModel& spec, LinearEstimatorKind kind,
                              double v2, double sigma2);

/// Same map as phi_empirical with the per-kind ghat, via spectral moments
/// (also valid for the asymptotic tags).
double phi_kind(const SpectralModel& spec, LinearEstimatorKind kind, double v2, double sigma2);

enum class PhiClosedFormKind { MF, PINV, LMMSE, PartialOrtho };

/// Asymptotic closed forms of the LE map for IID Gaussian (MF/PINV/LMMSE)
/// and partial orthogonal matrices, delta = N/M.
double phi_closed_form(PhiClosedFormKind kind, double delta, double v2, double sigma2);

/// |mse_sim - mse_se| / mse_sim.
double se_accuracy(double mse_sim, double mse_se);

struct SEState {
  std::vector<double> v2;       // length T+1, v2[0] = E{X^2}
  std::vector<double> tau2;     // length T
  std::vector<double> mse_out;  // length T
  bool converged = false;
  double v2_fixed = 0.0;
  double tau2_fixed = 0.0;
};

/// Generic scalar recursion v -> psi(phi(v)) with per-iteration output MSE.
struct SeMaps {
  std::function<double(double)> phi;      // v2 -> tau2
  std::function<double(double)> psi;      // tau2 -> v2
  std::function<double(double)> psi_out;  // tau2 -> mse
};
SEState run_se(const SeMaps& maps, int iterations, double v2_start = 1.0);

enum class AmpSeVarianceRule { IidGaussian, PartialOrthogonal };

/// AMP state evolution: tau2 = delta v2 + sigma2 (or (delta-1) v2 + sigma2
/// under the partial-orthogonal rule), v2' = E{[eta(X + tau Z) - X]^2}.
SEState se_amp(const Prior& prior, const AmpNle& nle, double delta, double sigma2,
               int iterations, AmpSeVarianceRule rule = AmpSeVarianceRule::IidGaussian);

/// OAMP state evolution for a configured LE map and NLE.
struct OampSeConfig {
  enum class Phi { MF, PINV, LMMSE, Optimal };
  Phi phi = Phi::Optimal;
  OampNle nle;
  double sigma2 = 0.0;
  int iterations = 50;
};
SEState run_se_oamp(const SpectralModel& spec, const Prior& prior, const OampSeConfig& config);

/// NLE maps used by the SE: divergence-free soft threshold with the
/// model-expectation divergence, the beta family, and the plain threshold.
double psi_soft_df(const Prior& prior, double tau2, double gamma, double c);
double psi_soft_beta(const Prior& prior, double tau2, double gamma, double beta);
double psi_out_soft(const Prior& prior, double tau2, double gamma);
double soft_model_divergence(const Prior& prior, double tau2, double gamma);

/// Quadrature Psi and divergence for an arbitrary scalar estimator; used to
/// cross-check the closed forms and to probe perturbed structures.
double psi_quadrature(const Prior& prior, double tau2, const std::function<double(double)>& eta,
                      int order = 61);
double divergence_quadrature(const Prior& prior, double tau2,
                             const std::function<double(double)>& eta_deriv, int order = 61);

struct FixedPoint {
  double v2 = 0.0;
  double tau2 = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Iterates the optimal maps Psi* . Phi* from v2 = E{X^2} to the stationary
/// point (monotone by construction).
FixedPoint fixed_point(const SpectralModel& spec, const Prior& prior, double sigma2,
                       double tol = 1e-12, int maxiter = 10000);

/// eta-transform E{1/(1 + gamma lambda^2)} and the numeric R-transform of
/// the spectral law, via bisection on gamma (z must be <= 0 and within the
/// transform's range).
double eta_transform(const SpectralModel& spec, double gamma);
double r_transform(const SpectralModel& spec, double z);

/// Fixed-point consistency check: |1/tau2 - R(-mmse_B(tau2)/sigma2)/sigma2|
/// * tau2 at the given stationary point.
double r_transform_residual(const SpectralModel& spec, const FixedPoint& fp,
                            const Prior& prior, double sigma2);

}  // namespace oamp
