#include "oamp/ensembles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "oamp/fast_transforms.hpp"

namespace oamp {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::IIDGaussian: return "iid_gaussian";
    case EnsembleKind::GeometricConditioned: return "geometric";
    case EnsembleKind::PartialOrthogonal: return "partial_orthogonal";
  }
  return "?";
}

std::string to_string(OrthoKind kind) {
  switch (kind) {
    case OrthoKind::Haar: return "haar";
    case OrthoKind::DCT: return "dct";
    case OrthoKind::Hadamard: return "hadamard";
  }
  return "?";
}

EnsembleSpec EnsembleSpec::iid_gaussian() { return EnsembleSpec{EnsembleKind::IIDGaussian}; }

EnsembleSpec EnsembleSpec::geometric(double kappa) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::GeometricConditioned;
  spec.kappa = kappa;
  return spec;
}

EnsembleSpec EnsembleSpec::partial_orthogonal(OrthoKind ortho) {
  EnsembleSpec spec;
  spec.kind = EnsembleKind::PartialOrthogonal;
  spec.ortho = ortho;
  return spec;
}

struct MatrixModel::Impl {
  int m = 0;
  int n = 0;
  EnsembleKind kind = EnsembleKind::IIDGaussian;
  OrthoKind ortho = OrthoKind::Haar;

  std::optional<Eigen::MatrixXd> dense;
  std::optional<SvdFactors> factors;

  // Operator path for subsampled DCT / Hadamard.
  std::vector<int> selected_rows;
  double row_scale = 1.0;  // sqrt(N/M)

  Eigen::VectorXd spectrum;  // empty until computed for IID Gaussian
  double trace_gram = 0.0;

  mutable std::once_flag gram_once;
  mutable std::unique_ptr<GramEig> gram;
  mutable std::once_flag dense_once;
  mutable std::unique_ptr<Eigen::MatrixXd> dense_cache;
  mutable std::once_flag spectrum_once;
  mutable Eigen::VectorXd spectrum_cache;

  bool is_operator() const { return !dense.has_value(); }
};

int MatrixModel::rows() const { return impl_->m; }
int MatrixModel::cols() const { return impl_->n; }
EnsembleKind MatrixModel::kind() const { return impl_->kind; }
OrthoKind MatrixModel::ortho_kind() const { return impl_->ortho; }
bool MatrixModel::has_factors() const { return impl_->factors.has_value(); }

const SvdFactors& MatrixModel::factors() const {
  if (!impl_->factors) throw std::logic_error("MatrixModel: factors not available");
  return *impl_->factors;
}

double MatrixModel::trace_gram() const { return impl_->trace_gram; }

Eigen::VectorXd MatrixModel::apply(const Eigen::VectorXd& x) const {
  const Impl& im = *impl_;
  if (x.size() != im.n) throw std::invalid_argument("MatrixModel::apply: dimension mismatch");
  if (im.dense) return (*im.dense) * x;
  const Eigen::VectorXd t =
      im.ortho == OrthoKind::DCT ? dct_forward(x) : fwht(x);
  Eigen::VectorXd y(im.m);
  for (int i = 0; i < im.m; ++i) y[i] = im.row_scale * t[im.selected_rows[i]];
  return y;
}

Eigen::VectorXd MatrixModel::apply_transpose(const Eigen::VectorXd& y) const {
  const Impl& im = *impl_;
  if (y.size() != im.m) throw std::invalid_argument("MatrixModel::apply_transpose: dimension mismatch");
  if (im.dense) return im.dense->transpose() * y;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(im.n);
  for (int i = 0; i < im.m; ++i) t[im.selected_rows[i]] = im.row_scale * y[i];
  return im.ortho == OrthoKind::DCT ? dct_inverse(t) : fwht(t);
}

const Eigen::VectorXd& MatrixModel::spectrum() const {
  const Impl& im = *impl_;
  if (im.spectrum.size() > 0) return im.spectrum;
  std::call_once(im.spectrum_once, [&im, this] {
    // Numeric route: eigenvalues of A A^T, zero-padded to length N.
    const GramEig& ge = gram_eig();
    Eigen::VectorXd spec = Eigen::VectorXd::Zero(im.n);
    for (int i = 0; i < im.m; ++i) spec[i] = std::max(ge.d[i], 0.0);
    std::sort(spec.data(), spec.data() + spec.size(), std::greater<double>());
    im.spectrum_cache = std::move(spec);
  });
  return im.spectrum_cache;
}

const GramEig& MatrixModel::gram_eig() const {
  const Impl& im = *impl_;
  std::call_once(im.gram_once, [&im] {
    auto ge = std::make_unique<GramEig>();
    if (im.factors) {
      ge->q = im.factors->v;
      ge->d = im.factors->singulars.array().square();
    } else if (im.kind == EnsembleKind::PartialOrthogonal) {
      ge->q = Eigen::MatrixXd::Identity(im.m, im.m);
      ge->d = Eigen::VectorXd::Constant(im.m, double(im.n) / im.m);
    } else {
      if (!im.dense) throw std::logic_error("gram_eig: no dense matrix");
      Eigen::MatrixXd gram = (*im.dense) * im.dense->transpose();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
      if (es.info() != Eigen::Success) throw std::runtime_error("gram_eig: eigensolver failed");
      ge->q = es.eigenvectors();
      ge->d = es.eigenvalues().cwiseMax(0.0);
    }
    im.gram = std::move(ge);
  });
  return *im.gram;
}

const Eigen::MatrixXd& MatrixModel::dense() const {
  const Impl& im = *impl_;
  if (im.dense) return *im.dense;
  if (im.n > 4096) throw std::logic_error("MatrixModel::dense: refusing to materialize for N > 4096");
  std::call_once(im.dense_once, [&im, this] {
    auto mat = std::make_unique<Eigen::MatrixXd>(im.m, im.n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(im.n);
    for (int j = 0; j < im.n; ++j) {
      e[j] = 1.0;
      mat->col(j) = apply(e);
      e[j] = 0.0;
    }
    im.dense_cache = std::move(mat);
  });
  return *im.dense_cache;
}

MatrixModel MatrixModel::from_dense(Eigen::MatrixXd a, EnsembleKind kind) {
  auto impl = std::make_shared<Impl>();
  impl->m = int(a.rows());
  impl->n = int(a.cols());
  impl->kind = kind;
  impl->trace_gram = a.squaredNorm();
  if (kind == EnsembleKind::PartialOrthogonal) {
    impl->spectrum = Eigen::VectorXd::Zero(impl->n);
    impl->spectrum.head(impl->m).setConstant(double(impl->n) / impl->m);
  }
  impl->dense = std::move(a);
  return MatrixModel(std::move(impl));
}

namespace {

std::vector<int> sample_rows(int m, int n, Rng& rng) {
  // Partial Fisher-Yates: uniform M-subset of {0..N-1}.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < m; ++i) {
    const int j = i + rng.uniform_int(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

Eigen::VectorXd geometric_singular_values(const EnsembleSpec& spec, int m, int n) {
  if (spec.kappa < 1.0) throw std::invalid_argument("geometric_singular_values: kappa must be >= 1");
  // lambda_i / lambda_{i+1} = kappa^(1/M), normalized to sum(lambda) = N
  // (or sum(lambda^2) = N with the alternate flag).
  Eigen::VectorXd lam(m);
  const double step = std::pow(spec.kappa, -1.0 / m);
  double cur = 1.0;
  for (int i = 0; i < m; ++i) {
    lam[i] = cur;
    cur *= step;
  }
  if (spec.normalize_singular_squares) {
    lam *= std::sqrt(double(n) / lam.squaredNorm());
  } else {
    lam *= double(n) / lam.sum();
  }
  return lam;
}

MatrixModel sample_matrix(const EnsembleSpec& spec, int m, int n, Rng& rng) {
  if (m < 1 || m > n) throw std::invalid_argument("sample_matrix: need 1 <= M <= N");
  auto impl = std::make_shared<MatrixModel::Impl>();
  impl->m = m;
  impl->n = n;
  impl->kind = spec.kind;
  impl->ortho = spec.ortho;

  switch (spec.kind) {
    case EnsembleKind::IIDGaussian: {
      Eigen::MatrixXd a(m, n);
      const double scale = 1.0 / std::sqrt(double(m));
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) a(i, j) = scale * rng.gaussian();
      impl->trace_gram = a.squaredNorm();
      impl->dense = std::move(a);
      // Spectrum computed numerically on first use.
      break;
    }
    case EnsembleKind::GeometricConditioned: {
      SvdFactors f;
      f.singulars = geometric_singular_values(spec, m, n);
      f.u_cols = haar_frame(n, m, rng);
      f.v = haar_orthogonal(m, rng);
      Eigen::MatrixXd a = f.v * f.singulars.asDiagonal() * f.u_cols.transpose();
      impl->spectrum = Eigen::VectorXd::Zero(n);
      impl->spectrum.head(m) = f.singulars.array().square();
      impl->trace_gram = impl->spectrum.sum();
      impl->factors = std::move(f);
      impl->dense = std::move(a);
      break;
    }
    case EnsembleKind::PartialOrthogonal: {
      impl->row_scale = std::sqrt(double(n) / m);
      impl->spectrum = Eigen::VectorXd::Zero(n);
      impl->spectrum.head(m).setConstant(double(n) / m);
      impl->trace_gram = double(n);
      if (spec.ortho == OrthoKind::Haar) {
        // A = sqrt(N/M) * (M uniformly selected rows of U^T); by invariance
        // of the Haar measure this is sqrt(N/M) * F^T with a Haar frame F.
        Eigen::MatrixXd frame = haar_frame(n, m, rng);
        impl->dense = impl->row_scale * frame.transpose();
      } else {
        if (spec.ortho == OrthoKind::Hadamard && !is_power_of_two(n))
          throw std::invalid_argument("sample_matrix: Hadamard needs N a power of two");
        impl->selected_rows = sample_rows(m, n, rng);
      }
      break;
    }
  }
  return MatrixModel(std::move(impl));
}

Eigen::MatrixXd haar_frame(int n, int k, Rng& rng) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("haar_frame: need 1 <= k <= n");
  Eigen::MatrixXd g(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  // Fix the sign convention so the distribution is exactly Haar.
  for (int j = 0; j < k; ++j)
    if (qr.matrixQR()(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXd haar_orthogonal(int n, Rng& rng) { return haar_frame(n, n, rng); }

namespace {
constexpr char kMagic[8] = {'O', 'A', 'M', 'P', 'M', 'A', 'T', '1'};
}

void save_matrix_model(const MatrixModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_matrix_model: cannot open " + path);
  const Eigen::MatrixXd& a = model.dense();
  const std::int64_t m = model.rows(), n = model.cols();
  const std::int32_t kind = std::int32_t(model.kind());
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&m), sizeof(m));
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&kind), sizeof(kind));
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  if (!out) throw std::runtime_error("save_matrix_model: write failed for " + path);
}

MatrixModel load_matrix_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_matrix_model: cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("load_matrix_model: bad header in " + path);
  std::int64_t m = 0, n = 0;
  std::int32_t kind = 0;
  in.read(reinterpret_cast<char*>(&m), sizeof(m));
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&kind), sizeof(kind));
  if (!in || m < 1 || n < m) throw std::runtime_error("load_matrix_model: bad dimensions");
  Eigen::MatrixXd a(m, n);
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      double v = 0;
      in.read(reinterpret_cast<char*>(&v), sizeof(v));
      a(i, j) = v;
    }
  if (!in) throw std::runtime_error("load_matrix_model: truncated file");
  return MatrixModel::from_dense(std::move(a), EnsembleKind(kind));
}

}  // namespace oamp
