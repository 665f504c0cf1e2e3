#include "oamp/fast_transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace oamp {

namespace {

// FFTW plans are created once per (size, kind) under a lock; execution on
// distinct buffers is thread-safe. FFTW_UNALIGNED lets plans run on any
// caller-provided storage.
class PlanCache {
 public:
  fftw_plan get(int n, fftw_r2r_kind kind) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(n, int(kind));
    auto it = plans_.find(key);
    if (it == plans_.end()) {
      Eigen::VectorXd in(n), out(n);
      fftw_plan plan = fftw_plan_r2r_1d(n, in.data(), out.data(), kind,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
      if (!plan) throw std::runtime_error("fftw plan creation failed");
      it = plans_.emplace(key, plan).first;
    }
    return it->second;
  }

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

}  // namespace

Eigen::VectorXd dct_forward(const Eigen::VectorXd& x) {
  const int n = int(x.size());
  Eigen::VectorXd in = x;
  Eigen::VectorXd out(n);
  fftw_execute_r2r(PlanCache::instance().get(n, FFTW_REDFT10), in.data(), out.data());
  // REDFT10 gives 2*sum x_m cos(pi(2m+1)k/(2n)); rescale to the orthonormal C.
  const double s = 1.0 / std::sqrt(2.0 * n);
  out *= s;
  out[0] /= std::sqrt(2.0);
  return out;
}

Eigen::VectorXd dct_inverse(const Eigen::VectorXd& x) {
  const int n = int(x.size());
  Eigen::VectorXd in = x;
  const double s = 1.0 / std::sqrt(2.0 * n);
  in *= s;
  in[0] *= std::sqrt(2.0);
  Eigen::VectorXd out(n);
  fftw_execute_r2r(PlanCache::instance().get(n, FFTW_REDFT01), in.data(), out.data());
  return out;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::VectorXd fwht(const Eigen::VectorXd& x) {
  const int n = int(x.size());
  if (!is_power_of_two(n)) throw std::invalid_argument("fwht: size must be a power of two");
  Eigen::VectorXd y = x;
  for (int half = 1; half < n; half *= 2) {
    for (int block = 0; block < n; block += 2 * half) {
      for (int i = block; i < block + half; ++i) {
        const double a = y[i];
        const double b = y[i + half];
        y[i] = a + b;
        y[i + half] = a - b;
      }
    }
  }
  return y / std::sqrt(double(n));
}

}  // namespace oamp
