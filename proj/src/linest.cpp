#include "oamp/linest.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace oamp {

std::string to_string(LinearEstimatorKind kind) {
  switch (kind) {
    case LinearEstimatorKind::MF: return "mf";
    case LinearEstimatorKind::PINV: return "pinv";
    case LinearEstimatorKind::LMMSE: return "lmmse";
  }
  return "?";
}

DecorrelatedLE decorrelated_le(LinearEstimatorKind kind, const MatrixModel& model,
                               double v2, double sigma2) {
  const int m = model.rows();
  const int n = model.cols();
  DecorrelatedLE le(model);
  le.kind_ = kind;

  if (model.kind() == EnsembleKind::PartialOrthogonal) {
    // A A^T = (N/M) I: MF, PINV and LMMSE all normalize to W = A^T.
    le.scale_ = 1.0;
    le.tr_bb_over_n_ = double(n - m) / m;
    le.tr_ww_over_n_ = 1.0;
    return le;
  }

  const Eigen::VectorXd* d = nullptr;
  Eigen::VectorXd d_local;
  if (model.has_factors()) {
    d_local = model.factors().singulars.array().square();
    d = &d_local;
  } else {
    d = &model.gram_eig().d;
  }

  Eigen::VectorXd f;
  switch (kind) {
    case LinearEstimatorKind::MF:
      break;  // f == 1
    case LinearEstimatorKind::PINV: {
      const double dmax = d->maxCoeff();
      if (d->minCoeff() <= 1e-12 * dmax)
        throw std::domain_error("decorrelated_le: singular A A^T, PINV undefined");
      f = d->cwiseInverse();
      break;
    }
    case LinearEstimatorKind::LMMSE: {
      if (!(v2 > 0.0)) throw std::domain_error("decorrelated_le: LMMSE needs v2 > 0");
      f = (v2 * d->array() + sigma2).inverse().matrix() * v2;
      break;
    }
  }

  double tr_wa = 0.0;   // sum d f
  double tr_waa = 0.0;  // sum (d f)^2
  double tr_wwh = 0.0;  // sum d f^2
  for (int i = 0; i < m; ++i) {
    const double di = (*d)[i];
    const double fi = f.size() ? f[i] : 1.0;
    tr_wa += di * fi;
    tr_waa += di * fi * di * fi;
    tr_wwh += di * fi * fi;
  }
  if (tr_wa == 0.0) throw std::domain_error("decorrelated_le: tr(What A) = 0");

  le.scale_ = double(n) / tr_wa;
  le.filter_ = std::move(f);
  le.tr_bb_over_n_ = (le.scale_ * le.scale_ * tr_waa - n) / n;
  le.tr_ww_over_n_ = le.scale_ * le.scale_ * tr_wwh / n;
  return le;
}

Eigen::VectorXd DecorrelatedLE::apply(const Eigen::VectorXd& u) const {
  if (filter_.size() == 0) return scale_ * model_.apply_transpose(u);
  const GramEig& ge = model_.gram_eig();
  Eigen::VectorXd t = ge.q.transpose() * u;
  t.array() *= filter_.array();
  return scale_ * model_.apply_transpose(ge.q * t);
}

Eigen::MatrixXd DecorrelatedLE::dense_w() const {
  const int m = model_.rows();
  Eigen::MatrixXd w(model_.cols(), m);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    e[i] = 1.0;
    w.col(i) = apply(e);
    e[i] = 0.0;
  }
  return w;
}

std::pair<double, double> le_traces(const DecorrelatedLE& le) {
  return {le.tr_bb_over_n(), le.tr_ww_over_n()};
}

Eigen::MatrixXd base_matrix_dense(LinearEstimatorKind kind, const Eigen::MatrixXd& a,
                                  double v2, double sigma2) {
  const auto m = a.rows();
  const auto n = a.cols();
  switch (kind) {
    case LinearEstimatorKind::MF:
      return a.transpose();
    case LinearEstimatorKind::PINV: {
      if (m <= n) {
        Eigen::MatrixXd gram = a * a.transpose();
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
          throw std::domain_error("base_matrix_dense: singular A A^T");
        return ldlt.solve(a).transpose();
      }
      Eigen::MatrixXd gram = a.transpose() * a;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::domain_error("base_matrix_dense: singular A^T A");
      return ldlt.solve(a.transpose());
    }
    case LinearEstimatorKind::LMMSE: {
      if (!(v2 > 0.0)) throw std::domain_error("base_matrix_dense: LMMSE needs v2 > 0");
      Eigen::MatrixXd gram = v2 * (a * a.transpose());
      gram.diagonal().array() += sigma2;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
      return (v2 * ldlt.solve(a)).transpose();
    }
  }
  throw std::logic_error("base_matrix_dense: unknown kind");
}

DenseDecorrelated decorrelate_dense(const Eigen::MatrixXd& what, const Eigen::MatrixXd& a) {
  const double n = double(a.cols());
  const double tr_wa = what.cwiseProduct(a.transpose()).sum();
  if (tr_wa == 0.0) throw std::domain_error("decorrelate_dense: tr(What A) = 0");
  DenseDecorrelated out;
  out.w = (n / tr_wa) * what;
  const Eigen::MatrixXd wa = out.w * a;
  out.tr_bb_over_n = (wa.squaredNorm() - 2.0 * wa.trace() + n) / n;
  out.tr_ww_over_n = out.w.squaredNorm() / n;
  return out;
}

}  // namespace oamp
