#include <doctest.h>

#include <cmath>

#include "oamp/model.hpp"

using namespace oamp;

TEST_SUITE("model") {
  TEST_CASE("bpsk samples take values in {-1, +1}") {
    Rng rng(7);
    const Eigen::VectorXd x = sample_signal(Prior::bpsk(), 4, rng);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i]) == 1.0);
  }

  TEST_CASE("priors have unit second moment") {
    const int n = 1'000'000;
    for (const Prior& prior : {Prior::bpsk(), Prior::bernoulli_gaussian(1.0),
                               Prior::bernoulli_gaussian(0.2)}) {
      Rng rng(11);
      const Eigen::VectorXd x = sample_signal(prior, n, rng);
      CHECK(x.squaredNorm() / n == doctest::Approx(1.0).epsilon(5e-3));
    }
  }

  TEST_CASE("bernoulli-gaussian zero fraction is binomial") {
    const int n = 1'000'000;
    Rng rng(5);
    const Eigen::VectorXd x = sample_signal(Prior::bernoulli_gaussian(0.2), n, rng);
    const double zeros = double((x.array() == 0.0).count()) / n;
    CHECK(zeros == doctest::Approx(0.8).epsilon(0.005 / 0.8));
  }

  TEST_CASE("invalid rho rejected") {
    CHECK_THROWS_AS(Prior::bernoulli_gaussian(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Prior::bernoulli_gaussian(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Prior::bernoulli_gaussian(-0.1), std::invalid_argument);
  }

  TEST_CASE("noiseless observation through the identity") {
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd x(2);
    x << 1.0, -1.0;
    Rng rng(1);
    const Eigen::VectorXd y = make_observation(eye, x, 0.0, rng);
    CHECK(y[0] == 1.0);
    CHECK(y[1] == -1.0);
  }

  TEST_CASE("zero matrix gives pure noise") {
    const int m = 200'000;
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(m, 2);
    Eigen::VectorXd x(2);
    x << 3.0, -4.0;
    Rng rng(2);
    const Eigen::VectorXd y = make_observation(zero, x, 1.0, rng);
    CHECK(std::abs(y.mean()) < 3.0 / std::sqrt(double(m)));
    CHECK(y.squaredNorm() / m == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("residual noise power concentrates at sigma2") {
    // chi-square concentration: mean ||y - Ax||^2 / M over repetitions.
    const int m = 40, reps = 10'000;
    Rng rng(3);
    Eigen::MatrixXd a(m, 8);
    for (int j = 0; j < a.size(); ++j) a.data()[j] = rng.gaussian();
    Eigen::VectorXd x(8);
    for (int j = 0; j < 8; ++j) x[j] = rng.gaussian();
    const Eigen::VectorXd ax = a * x;
    double acc = 0.0;
    for (int rep = 0; rep < reps; ++rep)
      acc += (make_observation(a, x, 0.01, rng) - ax).squaredNorm() / m;
    CHECK(acc / reps == doctest::Approx(0.01).epsilon(3e-4 / 0.01));
  }

  TEST_CASE("observation deterministic under a fixed seed") {
    Rng rng_a(42), rng_b(42);
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 9);
    Eigen::VectorXd x = Eigen::VectorXd::Random(9);
    const Eigen::VectorXd y1 = make_observation(a, x, 0.3, rng_a);
    const Eigen::VectorXd y2 = make_observation(a, x, 0.3, rng_b);
    CHECK((y1 - y2).norm() == 0.0);
  }

  TEST_CASE("dimension mismatch rejected") {
    Rng rng(1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 4);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
    CHECK_THROWS_AS(make_observation(a, x, 0.0, rng), std::invalid_argument);
  }

  TEST_CASE("noise variance from snr") {
    // tr(A^T A) = N = 100 at M = 50 and 0 dB gives sigma2 = 2.
    Rng rng(4);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(50, 100);
    for (int i = 0; i < 50; ++i) a(i, i) = std::sqrt(2.0);  // trace 100
    const MatrixModel model = MatrixModel::from_dense(a, EnsembleKind::IIDGaussian);
    CHECK(noise_variance_from_snr(model, Prior::bpsk(), 0.0) == doctest::Approx(2.0));
    CHECK(noise_variance_from_snr(model, Prior::bpsk(), 300.0) < 1e-27);  // snr -> inf

    // Partial orthogonal at M = 0.35 N and 50 dB: sigma2 = (N/M) 1e-5.
    const int n = 200, m = 70;
    const MatrixModel po =
        sample_matrix(EnsembleSpec::partial_orthogonal(OrthoKind::Haar), m, n, rng);
    CHECK(noise_variance_from_snr(po, Prior::bernoulli_gaussian(0.1), 50.0) ==
          doctest::Approx(double(n) / m * 1e-5).epsilon(1e-12));
  }

  TEST_CASE("linear system validates shapes") {
    Rng rng(9);
    const MatrixModel model = sample_matrix(EnsembleSpec::iid_gaussian(), 4, 8, rng);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(4);
    CHECK_THROWS_AS(LinearSystem(model, Eigen::VectorXd::Zero(5), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(LinearSystem(model, y, 0.1, Eigen::VectorXd::Zero(7)), std::invalid_argument);
    CHECK_THROWS_AS(LinearSystem(model, y, -1.0), std::invalid_argument);
    CHECK_NOTHROW(LinearSystem(model, y, 0.0, Eigen::VectorXd::Zero(8)));
  }
}
