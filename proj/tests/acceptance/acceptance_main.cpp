// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Usage: oamp_acceptance [criterion ...]   (default: all of 1..8)

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oamp/harness.hpp"
#include "oamp/quadrature.hpp"

using namespace oamp;

namespace {

struct Criterion {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

/// Mean-MSE curve per algorithm label from a result table.
struct Curve {
  std::vector<double> sim, se;
};

std::map<std::string, Curve> mean_curves(const ResultTable& table) {
  std::map<std::string, Curve> curves;
  for (const ResultRow& row : table.rows) {
    if (row.trial != -1) continue;
    Curve& c = curves[row.algorithm];
    if (int(c.sim.size()) <= row.iteration) {
      c.sim.resize(row.iteration + 1);
      c.se.resize(row.iteration + 1);
    }
    c.sim[row.iteration] = row.mse_sim;
    c.se[row.iteration] = row.mse_se;
  }
  return curves;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- criterion 1

Criterion criterion_1() {
  // Partial orthogonal SE accuracy: N=1024, M=358, rho=0.1, 50 dB,
  // 50 trials, 30 iterations, all three ortho kinds. Per-iteration E < 0.15
  // once the MSE is below 1e-1, and E < 0.3 near the noise floor (taken as
  // SE MSE within 1.1x of its final value). Runtime target 5 minutes.
  Criterion result;
  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string& preset : {"partial-haar", "partial-dct", "partial-hadamard"}) {
    const ExperimentConfig config = preset_experiment(preset);
    const ResultTable table = run_experiment(config);
    const Curve curve = mean_curves(table).at("oamp-lmmse");
    const double floor = curve.se.back();
    double worst_descent = 0.0, worst_floor = 0.0;
    for (size_t t = 0; t < curve.se.size(); ++t) {
      if (!(curve.se[t] < 0.1)) continue;
      const double e = se_accuracy(curve.sim[t], curve.se[t]);
      if (curve.se[t] <= 1.1 * floor) worst_floor = std::max(worst_floor, e);
      else worst_descent = std::max(worst_descent, e);
    }
    result.note(fmt("%s worst E: descent %.3f, floor %.3f", preset.c_str(), worst_descent,
                    worst_floor));
    if (worst_descent >= 0.15) result.fail(fmt("%s descent E >= 0.15", preset.c_str()));
    if (worst_floor >= 0.3) result.fail(fmt("%s floor E >= 0.3", preset.c_str()));
  }
  const double secs = elapsed_s(t0);
  result.note(fmt("runtime %.0fs", secs));
  if (secs > 300.0) result.fail("runtime exceeded 5 min");
  return result;
}

// ---------------------------------------------------------------- criterion 2

Criterion criterion_2() {
  // AMP beta sweep at N=2048, rho=0.4, 50 dB, 50 trials.
  // IID Gaussian: E < 0.05 at every beta. Partial DCT under the (N-M)/M
  // variance rule: E < 0.05 at beta=0 and E > 0.3 at beta=1.
  Criterion result;
  auto final_e = [](const Curve& c) { return se_accuracy(c.sim.back(), c.se.back()); };

  const ResultTable gauss = run_experiment(preset_experiment("beta-sweep-gaussian"));
  double worst = 0.0;
  for (const auto& [label, curve] : mean_curves(gauss)) worst = std::max(worst, final_e(curve));
  result.note(fmt("gaussian worst E over beta grid %.4f", worst));
  if (worst >= 0.05) result.fail("gaussian E >= 0.05 at some beta");

  const ResultTable dct = run_experiment(preset_experiment("beta-sweep-dct"));
  const auto curves = mean_curves(dct);
  const double e0 = final_e(curves.at("amp(beta=0)"));
  const double e1 = final_e(curves.at("amp(beta=1)"));
  result.note(fmt("dct E(beta=0) = %.4f, E(beta=1) = %.2f", e0, e1));
  if (e0 >= 0.05) result.fail("dct E at beta=0 >= 0.05");
  if (e1 <= 0.3) result.fail("dct E at beta=1 <= 0.3");
  return result;
}

// ---------------------------------------------------------------- criterion 3

Criterion criterion_3() {
  // BPSK on IID Gaussian: N=2048, M=0.65N, 14 dB, 100 trials. (a) every OAMP
  // variant matches its SE with E < 0.1 for t > 2; (b) OAMP-LMMSE and AMP
  // share the converged MSE within 5%; (c) OAMP-LMMSE needs strictly fewer
  // iterations than AMP to come within 10% of its fixed point.
  Criterion result;
  const ResultTable table = run_experiment(preset_experiment("bpsk-gaussian"));
  const auto curves = mean_curves(table);

  for (const std::string& label : {"oamp-mf", "oamp-pinv", "oamp-lmmse"}) {
    const Curve& c = curves.at(label);
    double worst = 0.0;
    for (size_t t = 3; t < c.sim.size(); ++t)
      worst = std::max(worst, se_accuracy(c.sim[t], c.se[t]));
    result.note(fmt("%s worst E past t=2: %.3f", label.c_str(), worst));
    if (worst >= 0.1) result.fail(fmt("%s E >= 0.1", label.c_str()));
  }

  // Converged MSE as the mean of the last four iterations; marginal bits
  // can lock into period-2 flip cycles, so a single final iteration sits on
  // one phase of the alternation.
  auto converged_mse = [](const Curve& c) {
    double acc = 0.0;
    const size_t k = std::min<size_t>(4, c.sim.size());
    for (size_t t = c.sim.size() - k; t < c.sim.size(); ++t) acc += c.sim[t];
    return acc / k;
  };
  const Curve& amp = curves.at("amp");
  const Curve& lmmse = curves.at("oamp-lmmse");
  const double rel = std::abs(converged_mse(amp) - converged_mse(lmmse)) / converged_mse(lmmse);
  result.note(fmt("amp vs oamp-lmmse converged MSE gap %.3f", rel));
  if (rel >= 0.05) result.fail("converged MSE differs by >= 5%");

  auto iterations_to_converge = [&](const Curve& c) {
    const double target = 1.1 * converged_mse(c);
    for (size_t t = 0; t < c.sim.size(); ++t)
      if (c.sim[t] <= target) return int(t);
    return int(c.sim.size());
  };
  const int t_lmmse = iterations_to_converge(lmmse);
  const int t_amp = iterations_to_converge(amp);
  result.note(fmt("iterations to 10%% of fixed point: oamp-lmmse %d, amp %d", t_lmmse, t_amp));
  if (!(t_lmmse < t_amp)) result.fail("oamp-lmmse not strictly faster than amp");
  return result;
}

// ---------------------------------------------------------------- criterion 4

Criterion criterion_4() {
  // Ill-conditioned run: geometric kappa=5, N=1000, M=500, rho=0.2, 60 dB, 100
  // trials. OAMP-PINV and OAMP-LMMSE match the empirical-spectrum SE with
  // E < 0.15 per iteration; LMMSE beats MF by >= 10 dB at the end.
  Criterion result;
  const ResultTable table = run_experiment(preset_experiment("ill-conditioned"));
  const auto curves = mean_curves(table);

  for (const std::string& label : {"oamp-pinv", "oamp-lmmse"}) {
    const Curve& c = curves.at(label);
    double worst = 0.0;
    for (size_t t = 0; t < c.sim.size(); ++t)
      worst = std::max(worst, se_accuracy(c.sim[t], c.se[t]));
    result.note(fmt("%s worst E %.3f", label.c_str(), worst));
    if (worst >= 0.15) result.fail(fmt("%s E >= 0.15", label.c_str()));
  }

  const double gain_db =
      10.0 * std::log10(curves.at("oamp-mf").sim.back() / curves.at("oamp-lmmse").sim.back());
  result.note(fmt("lmmse final gain over mf: %.1f dB", gain_db));
  if (!(gain_db >= 10.0)) result.fail("lmmse does not beat mf by 10 dB");
  return result;
}

// ---------------------------------------------------------------- criterion 5

Criterion criterion_5() {
  // Closed-form vs empirical Phi: IID Gaussian N=4000, M=2000; Eq. (44)
  // forms within 5% of phi_empirical on the sampled spectrum across
  // v2 in {1e-4 .. 1}. sigma2 fixed at 1e-2 (the criterion leaves it free).
  Criterion result;
  Rng rng(4242);
  const MatrixModel model = sample_matrix(EnsembleSpec::iid_gaussian(), 2000, 4000, rng);
  const SpectralModel spec = SpectralModel::from_model(model);
  const double sigma2 = 1e-2;
  const double delta = 2.0;
  double worst = 0.0;
  for (double v2 : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    const struct {
      LinearEstimatorKind kind;
      PhiClosedFormKind closed;
    } kinds[] = {{LinearEstimatorKind::MF, PhiClosedFormKind::MF},
                 {LinearEstimatorKind::PINV, PhiClosedFormKind::PINV},
                 {LinearEstimatorKind::LMMSE, PhiClosedFormKind::LMMSE}};
    for (const auto& k : kinds) {
      const double emp = phi_kind(spec, k.kind, v2, sigma2);
      const double closed = phi_closed_form(k.closed, delta, v2, sigma2);
      worst = std::max(worst, std::abs(closed - emp) / emp);
    }
  }
  result.note(fmt("worst relative gap %.4f", worst));
  if (worst >= 0.05) result.fail("closed form vs empirical gap >= 5%");
  return result;
}

// ---------------------------------------------------------------- criterion 6

Criterion criterion_6() {
  // Theorem 3: optimal SE converges monotonically for every ensemble/prior
  // pair, the fixed point satisfies the R-transform equation to 1e-6, and a
  // +10% perturbation of tau2 breaks it past 1e-3. Runtime < 1 min.
  Criterion result;
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<std::pair<std::string, SpectralModel>> spectra;
  {
    Rng rng(77);
    spectra.emplace_back("iid", SpectralModel::from_model(
                                    sample_matrix(EnsembleSpec::iid_gaussian(), 500, 1000, rng)));
    spectra.emplace_back("partial", SpectralModel::partial_orthogonal_asymptotic(1.0 / 0.35));
    for (double kappa : {1.0, 5.0, 10.0}) {
      Eigen::VectorXd lam = geometric_singular_values(EnsembleSpec::geometric(kappa), 500, 1000);
      Eigen::VectorXd lam2 = Eigen::VectorXd::Zero(1000);
      lam2.head(500) = lam.array().square();
      spectra.emplace_back(fmt("geo%g", kappa), SpectralModel::from_spectrum(lam2));
    }
  }

  for (const auto& [name, spec] : spectra) {
    for (const Prior& prior : {Prior::bpsk(), Prior::bernoulli_gaussian(0.2)}) {
      const std::string tag =
          fmt("%s/%s", name.c_str(), prior.kind == PriorKind::BPSK ? "bpsk" : "bg");
      const double sigma2 = spec.mean_lambda2() / 1e3;  // 30 dB at unit signal power

      OampSeConfig config;
      config.phi = OampSeConfig::Phi::Optimal;
      config.nle = OampNle::mmse_optimal(prior);
      config.sigma2 = sigma2;
      config.iterations = 200;
      const SEState se = run_se_oamp(spec, prior, config);
      for (size_t t = 1; t < se.v2.size(); ++t)
        if (se.v2[t] > se.v2[t - 1] + 1e-12) result.fail(tag + ": v2 not non-increasing");
      for (size_t t = 1; t < se.tau2.size(); ++t)
        if (se.tau2[t] > se.tau2[t - 1] + 1e-12) result.fail(tag + ": tau2 not non-increasing");

      const FixedPoint fp = fixed_point(spec, prior, sigma2);
      if (!fp.converged) {
        result.fail(tag + ": fixed point did not converge");
        continue;
      }
      const double residual = r_transform_residual(spec, fp, prior, sigma2);
      if (!(residual < 1e-6)) result.fail(fmt("%s: residual %.2e >= 1e-6", tag.c_str(), residual));
      FixedPoint perturbed = fp;
      perturbed.tau2 *= 1.1;
      const double bad = r_transform_residual(spec, perturbed, prior, sigma2);
      if (!(bad > 1e-3)) result.fail(fmt("%s: perturbed residual %.2e <= 1e-3", tag.c_str(), bad));
    }
  }
  const double secs = elapsed_s(t0);
  result.note(fmt("10 ensemble/prior pairs, runtime %.1fs", secs));
  if (secs > 60.0) result.fail("runtime exceeded 1 min");
  return result;
}

// ---------------------------------------------------------------- criterion 7

Criterion criterion_7() {
  // Always-on property suites, re-run in condensed form: de-correlation
  // traces, exact DF divergence, Prop. 1/2 orthogonality, derivative
  // consistency, quadrature-vs-Monte-Carlo mmse_B, Lemma 2 monotonicity and
  // the Appendix C Jensen inequalities.
  Criterion result;
  Rng rng(4747);

  // de-correlation: tr(I - W A) = 0 within 1e-8 N
  for (const EnsembleSpec& spec :
       {EnsembleSpec::iid_gaussian(), EnsembleSpec::geometric(5.0),
        EnsembleSpec::partial_orthogonal(OrthoKind::DCT)}) {
    const MatrixModel model = sample_matrix(spec, 48, 96, rng);
    for (LinearEstimatorKind kind :
         {LinearEstimatorKind::MF, LinearEstimatorKind::PINV, LinearEstimatorKind::LMMSE}) {
      const DecorrelatedLE le = decorrelated_le(kind, model, 0.5, 0.01);
      const double tr = (Eigen::MatrixXd::Identity(96, 96) - le.dense_w() * model.dense()).trace();
      if (!(std::abs(tr) < 1e-8 * 96)) result.fail("de-correlation trace");
    }
  }

  // DF divergence exactly zero
  {
    Eigen::VectorXd r(4096);
    for (int i = 0; i < r.size(); ++i) r[i] = 2.5 * rng.gaussian();
    const DFDenoiser df{Denoiser::posterior_mean_for(Prior::bernoulli_gaussian(0.2)),
                        CRule::optimal()};
    const DFApplyResult res = df_apply(df, r, 0.3);
    double dsum = 0.0;
    for (int i = 0; i < r.size(); ++i) dsum += df.base.deriv(r[i], 0.3);
    if (res.c * (dsum / r.size() - res.dbar) != 0.0) result.fail("DF divergence not exactly 0");
  }

  // Prop. 2 orthogonality and error orthogonality, 3 sigma Monte Carlo
  {
    const int n = 100'000;
    const Prior prior = Prior::bernoulli_gaussian(0.2);
    const double tau2 = 0.25, tau = 0.5;
    Eigen::VectorXd x(n), z(n), r(n);
    for (int i = 0; i < n; ++i) {
      x[i] = rng.uniform() < prior.rho ? std::sqrt(prior.slab_variance()) * rng.gaussian() : 0.0;
      z[i] = rng.gaussian();
      r[i] = x[i] + tau * z[i];
    }
    const DFDenoiser df{Denoiser::posterior_mean_for(prior), CRule::optimal()};
    const DFApplyResult res = df_apply(df, r, tau2);
    auto three_sigma = [&](const Eigen::VectorXd& prod, const char* what) {
      const double mean = prod.mean();
      const double sd = std::sqrt((prod.array() - mean).square().sum() / n);
      if (!(std::abs(mean) <= 3.0 * sd / std::sqrt(double(n)))) result.fail(what);
    };
    three_sigma(res.s.array() * (tau * z.array()), "Prop 2 noise orthogonality");
    three_sigma(((r - x).array() * (res.s - x).array()).matrix(), "error orthogonality");
  }

  // Prop. 1: h = B q + W n uncorrelated with x over matrix draws
  {
    const int draws = 150, n = 40, m = 20;
    double sum = 0.0, sq = 0.0;
    for (int d = 0; d < draws; ++d) {
      const MatrixModel model = sample_matrix(EnsembleSpec::geometric(4.0), m, n, rng);
      const DecorrelatedLE le = decorrelated_le(LinearEstimatorKind::LMMSE, model, 1.0, 0.05);
      const Eigen::VectorXd x = sample_signal(Prior::bpsk(), n, rng);
      Eigen::VectorXd q(n), noise(m);
      for (int i = 0; i < n; ++i) q[i] = rng.gaussian();
      for (int i = 0; i < m; ++i) noise[i] = std::sqrt(0.05) * rng.gaussian();
      const Eigen::VectorXd h = q - le.apply(model.apply(q)) + le.apply(noise);
      const double p = h.dot(x) / n;
      sum += p;
      sq += p * p;
    }
    const double mean = sum / draws;
    const double sd = std::sqrt(std::max(sq / draws - mean * mean, 0.0));
    if (!(std::abs(mean) <= 3.0 * sd / std::sqrt(double(draws))))
      result.fail("Prop 1 h-x correlation");
  }

  // derivative consistency at 1000 points per denoiser
  for (const Denoiser& d : {Denoiser::posterior_mean_for(Prior::bpsk()),
                            Denoiser::posterior_mean_for(Prior::bernoulli_gaussian(0.2)),
                            Denoiser::soft_thresholding(GammaRule::tau_scaled(1.0))}) {
    const double tau2 = 0.5;
    const double gamma =
        d.kind() == Denoiser::Kind::SoftThreshold ? d.gamma_rule().gamma(tau2) : -1.0;
    int checked = 0;
    while (checked < 1000) {
      const double r = 6.0 * (rng.uniform() - 0.5);
      if (gamma > 0.0 && std::abs(std::abs(r) - gamma) < 1e-3) continue;
      const double h = 5e-5;
      const double fd = (d.eval(r + h, tau2) - d.eval(r - h, tau2)) / (2 * h);
      if (!(std::abs(d.deriv(r, tau2) - fd) < 1e-6)) {
        result.fail("derivative consistency");
        break;
      }
      ++checked;
    }
  }

  // quadrature mmse_B vs Monte Carlo within 3 standard errors
  for (const Prior& prior : {Prior::bpsk(), Prior::bernoulli_gaussian(0.2)}) {
    const double tau2 = 0.5, tau = std::sqrt(tau2);
    const int samples = 2'000'000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = prior.kind == PriorKind::BPSK
                           ? (rng.uniform() < 0.5 ? 1.0 : -1.0)
                           : (rng.uniform() < prior.rho
                                  ? std::sqrt(prior.slab_variance()) * rng.gaussian()
                                  : 0.0);
      const double e = posterior_mean(prior, x + tau * rng.gaussian(), tau2) - x;
      acc += e * e;
      acc2 += e * e * e * e;
    }
    const double mc = acc / samples;
    const double se = std::sqrt(std::max(acc2 / samples - mc * mc, 0.0) / samples);
    if (!(std::abs(mmse_b(prior, tau2) - mc) < 3.0 * se + 1e-12))
      result.fail("mmse_B quadrature vs Monte Carlo");
  }

  // Lemma 2 monotone grids + Jensen inequalities
  {
    Rng srng(4848);
    const SpectralModel spec =
        SpectralModel::from_model(sample_matrix(EnsembleSpec::geometric(5.0), 64, 128, srng));
    double prev = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double v2 = std::pow(10.0, -5.0 + 6.0 * i / 99.0);
      const double cur = phi_star(spec, v2, 1e-3);
      if (!(cur > prev)) result.fail("Lemma 2 Phi* monotonicity");
      prev = cur;
      const double h = 1e-5 * v2;
      const double der = (mmse_a(spec, v2 + h, 1e-3) - mmse_a(spec, v2 - h, 1e-3)) / (2 * h);
      const double ratio = mmse_a(spec, v2, 1e-3) / v2;
      if (!(der >= ratio * ratio * (1.0 - 1e-4))) result.fail("Jensen mmse_A inequality");
    }
    for (const Prior& prior : {Prior::bpsk(), Prior::bernoulli_gaussian(0.2)}) {
      prev = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double tau2 = std::pow(10.0, -2.0 + 4.0 * i / 99.0);
        const double cur = psi_star(prior, tau2);
        if (!(cur >= prev)) result.fail("Lemma 2 Psi* monotonicity");
        prev = cur;
        const double h = 1e-5 * tau2;
        const double der = (mmse_b(prior, tau2 + h) - mmse_b(prior, tau2 - h)) / (2 * h);
        const double ratio = mmse_b(prior, tau2) / tau2;
        if (!(der >= ratio * ratio * (1.0 - 1e-4))) result.fail("Jensen mmse_B inequality");
      }
    }
  }

  if (result.pass) result.note("all property suites hold");
  return result;
}

// ---------------------------------------------------------------- criterion 8

Criterion criterion_8() {
  // Phase transition scan: N=512, 10x10 grid, 20 trials, T=50, noiseless.
  // OAMP's empirical success region must contain AMP's at every grid point.
  Criterion result;
  const auto t0 = std::chrono::steady_clock::now();
  const PtcConfig config = preset_ptc();
  const std::vector<PtcRow> rows = phase_transition(config);

  std::map<std::pair<double, double>, std::pair<double, double>> grid;  // (amp, oamp)
  for (const PtcRow& row : rows) {
    auto& cell = grid[{row.m_over_n, row.k_over_m}];
    if (row.algorithm == "amp") cell.first = row.success_fraction;
    else cell.second = row.success_fraction;
  }
  // Success region in the usual PTC sense: cells recovered with empirical
  // probability >= 1/2. Containment must hold at every grid point; the raw
  // per-cell fraction comparison is reported alongside (it can flip by one
  // trial at transition cells).
  int region_violations = 0, fraction_dips = 0;
  double amp_area = 0.0, oamp_area = 0.0;
  for (const auto& [point, cell] : grid) {
    if (cell.first >= 0.5 && cell.second < 0.5) ++region_violations;
    if (cell.second < cell.first) ++fraction_dips;
    amp_area += cell.first;
    oamp_area += cell.second;
  }
  result.note(fmt("mean success: amp %.3f, oamp %.3f over %zu points; cells with oamp "
                  "fraction below amp: %d",
                  amp_area / grid.size(), oamp_area / grid.size(), grid.size(), fraction_dips));
  if (region_violations > 0)
    result.fail(fmt("%d grid points leave the OAMP success region short of AMP's", region_violations));
  const double secs = elapsed_s(t0);
  result.note(fmt("runtime %.0fs", secs));
  if (secs > 1800.0) result.fail("runtime exceeded 30 min");
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8};

  const std::map<int, Criterion (*)()> criteria = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
  };
  static const char* kDescriptions[9] = {
      nullptr,
      "SE accuracy for OAMP on partial orthogonal matrices",
      "AMP beta-sweep SE accuracy crossover",
      "OAMP/AMP on IID Gaussian with BPSK",
      "Ill-conditioned SE accuracy",
      "Closed-form vs empirical LE map (Eq. 44)",
      "Optimal-SE fixed point and R-transform consistency (Theorem 3)",
      "Always-on property suites",
      "Noiseless phase transition containment",
  };

  bool all_pass = true;
  for (int idx : which) {
    const auto it = criteria.find(idx);
    if (it == criteria.end()) {
      std::printf("FAIL criterion %d: unknown criterion\n", idx);
      all_pass = false;
      continue;
    }
    Criterion res;
    try {
      res = it->second();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = fmt("exception: %s", e.what());
    }
    std::printf("%s criterion %d: %s (%s)\n", res.pass ? "PASS" : "FAIL", idx, kDescriptions[idx],
                res.detail.c_str());
    std::fflush(stdout);
    if (!res.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
