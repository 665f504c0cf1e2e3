#pragma once

#include <Eigen/Core>

#include <utility>

#include "oamp/ensembles.hpp"

namespace oamp {

enum class LinearEstimatorKind { MF, PINV, LMMSE };

std::string to_string(LinearEstimatorKind kind);

/// De-correlated linear estimator W = N / tr(What A) * What, so that
/// tr(I - W A) = 0. What shares singular vectors with A^T; its singular
/// values are lambda * f(lambda^2) with a per-kind spectral filter f
/// (MF: 1, PINV: 1/d, LMMSE: v2 / (v2 d + sigma2)), which makes the
/// tr(B B^T) and tr(W W^T) coefficients exact sums over the spectrum.
class DecorrelatedLE {
 public:
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;  // W u

  double tr_bb_over_n() const { return tr_bb_over_n_; }
  double tr_ww_over_n() const { return tr_ww_over_n_; }
  LinearEstimatorKind kind() const { return kind_; }

  /// Explicit W for diagnostics; intended for small models.
  Eigen::MatrixXd dense_w() const;

 private:
  friend DecorrelatedLE decorrelated_le(LinearEstimatorKind, const MatrixModel&, double, double);

  MatrixModel model_;
  LinearEstimatorKind kind_ = LinearEstimatorKind::MF;
  double scale_ = 1.0;        // N / tr(What A)
  Eigen::VectorXd filter_;    // f(d_i); empty when f == 1
  double tr_bb_over_n_ = 0.0;
  double tr_ww_over_n_ = 0.0;

  explicit DecorrelatedLE(MatrixModel model) : model_(std::move(model)) {}
};

/// Builds the de-correlated estimator of the given kind. LMMSE requires
/// v2 > 0; PINV requires full-rank A. For partial orthogonal models every
/// kind collapses to W = A^T.
DecorrelatedLE decorrelated_le(LinearEstimatorKind kind, const MatrixModel& model,
                               double v2, double sigma2);

/// (tr(B B^T)/N, tr(W W^T)/N) — the SE and tau2-estimator coefficients.
std::pair<double, double> le_traces(const DecorrelatedLE& le);

/// Dense base estimators of Eq-style closed forms, mainly for tests.
/// PINV supports both M < N and M > N branches.
Eigen::MatrixXd base_matrix_dense(LinearEstimatorKind kind, const Eigen::MatrixXd& a,
                                  double v2, double sigma2);

struct DenseDecorrelated {
  Eigen::MatrixXd w;
  double tr_bb_over_n = 0.0;
  double tr_ww_over_n = 0.0;
};

/// Trace normalization of an arbitrary estimator: W = N / tr(What A) * What.
/// Throws std::domain_error when tr(What A) = 0.
DenseDecorrelated decorrelate_dense(const Eigen::MatrixXd& what, const Eigen::MatrixXd& a);

}  // namespace oamp
