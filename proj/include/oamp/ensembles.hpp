#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oamp/rng.hpp"

namespace oamp {

enum class EnsembleKind { IIDGaussian, GeometricConditioned, PartialOrthogonal };
enum class OrthoKind { Haar, DCT, Hadamard };

std::string to_string(EnsembleKind kind);
std::string to_string(OrthoKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::IIDGaussian;
  double kappa = 1.0;                  // GeometricConditioned only, >= 1
  OrthoKind ortho = OrthoKind::Haar;   // PartialOrthogonal only
  // The singular values of the geometric ensemble are normalized so that
  // sum(lambda_i) = N. The alternate sum(lambda_i^2) = N rule is available
  // but off by default.
  bool normalize_singular_squares = false;

  static EnsembleSpec iid_gaussian();
  static EnsembleSpec geometric(double kappa);
  static EnsembleSpec partial_orthogonal(OrthoKind ortho);
};

/// A = U_cols * diag(singulars) * V^T with orthonormal U_cols (N x M) and
/// V (M x M); kept when the ensemble is built from an explicit SVD.
struct SvdFactors {
  Eigen::MatrixXd u_cols;      // N x M
  Eigen::VectorXd singulars;   // length M, descending
  Eigen::MatrixXd v;           // M x M
};

/// Eigensystem of the Gram matrix A A^T = q * diag(d) * q^T.
struct GramEig {
  Eigen::MatrixXd q;  // M x M orthogonal
  Eigen::VectorXd d;  // length M
};

/// Realized sensing matrix together with its singular structure.
///
/// Immutable after construction and cheap to copy (shared storage), so
/// models can be handed to concurrent solver runs freely. Heavyweight
/// derived data (Gram eigensystem, dense materialization of the fast
/// transforms) is computed on first use and cached.
class MatrixModel {
 public:
  int rows() const;  // M
  int cols() const;  // N
  EnsembleKind kind() const;
  OrthoKind ortho_kind() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;            // A x
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const;  // A^T y

  /// Eigenvalues of A^T A, length N, zeros included; exact lambda_i^2 when
  /// the factors are known, numeric otherwise.
  const Eigen::VectorXd& spectrum() const;

  /// tr(A^T A).
  double trace_gram() const;

  bool has_factors() const;
  const SvdFactors& factors() const;

  /// Gram eigensystem; numeric for IID Gaussian models, assembled from the
  /// factors otherwise.
  const GramEig& gram_eig() const;

  /// Explicit matrix; materialized on demand for operator-backed models
  /// (N <= 4096).
  const Eigen::MatrixXd& dense() const;

  static MatrixModel from_dense(Eigen::MatrixXd a, EnsembleKind kind);

  struct Impl;
  explicit MatrixModel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

MatrixModel sample_matrix(const EnsembleSpec& spec, int m, int n, Rng& rng);

/// Haar-distributed orthogonal n x n matrix (QR of a Gaussian matrix with
/// the sign of the R diagonal folded in).
Eigen::MatrixXd haar_orthogonal(int n, Rng& rng);

/// Haar-distributed n x k orthonormal frame, k <= n.
Eigen::MatrixXd haar_frame(int n, int k, Rng& rng);

/// Deterministic singular values of the geometric ensemble:
/// lambda_i / lambda_{i+1} = kappa^(1/M), normalized per the spec flag.
Eigen::VectorXd geometric_singular_values(const EnsembleSpec& spec, int m, int n);

/// Flat binary export: header (magic, M, N, kind) + row-major doubles.
void save_matrix_model(const MatrixModel& model, const std::string& path);
MatrixModel load_matrix_model(const std::string& path);

}  // namespace oamp
