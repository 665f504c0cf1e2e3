#include "oamp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "oamp/parallel.hpp"

namespace oamp {

namespace {

using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double accuracy_or_zero(double sim, double se) {
  if (sim == 0.0) return se == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return se_accuracy(sim, se);
}

/// One algorithm/denoiser variant of an experiment. traj_source points at
/// the variant whose simulated trajectory this row set reuses (differs only
/// for alternate-SE-rule rows).
struct Variant {
  std::string label;
  Algorithm algo = Algorithm::OampLMMSE;
  bool is_amp = false;
  AmpNle amp_nle;
  OampNle oamp_nle;
  std::vector<double> mse_se;  // per iteration
  int traj_source = -1;
};

LinearEstimatorKind le_kind_of(Algorithm algo) {
  switch (algo) {
    case Algorithm::OampMF: return LinearEstimatorKind::MF;
    case Algorithm::OampPINV: return LinearEstimatorKind::PINV;
    case Algorithm::OampLMMSE: return LinearEstimatorKind::LMMSE;
    default: throw std::logic_error("le_kind_of: not an OAMP algorithm");
  }
}

OampSeConfig::Phi phi_of(Algorithm algo) {
  switch (algo) {
    case Algorithm::OampMF: return OampSeConfig::Phi::MF;
    case Algorithm::OampPINV: return OampSeConfig::Phi::PINV;
    case Algorithm::OampLMMSE: return OampSeConfig::Phi::LMMSE;
    default: throw std::logic_error("phi_of: not an OAMP algorithm");
  }
}

std::string beta_label(double beta) {
  std::ostringstream os;
  os << "amp(beta=" << beta << ")";
  return os.str();
}

std::string c_label(Algorithm algo, double c) {
  std::ostringstream os;
  os << to_string(algo) << "(c=" << c << ")";
  return os.str();
}

std::vector<Variant> expand_variants(const ExperimentConfig& config) {
  std::vector<Variant> variants;
  for (Algorithm algo : config.algorithms) {
    switch (config.denoiser.kind) {
      case DenoiserConfig::Kind::Mmse: {
        Variant v;
        v.algo = algo;
        v.label = to_string(algo);
        if (algo == Algorithm::Amp) {
          v.is_amp = true;
          v.amp_nle = AmpNle::posterior_mean(config.prior);
        } else {
          v.oamp_nle = OampNle::mmse_optimal(config.prior);
        }
        variants.push_back(std::move(v));
        break;
      }
      case DenoiserConfig::Kind::SoftThreshold: {
        if (algo == Algorithm::Amp)
          throw std::invalid_argument("run_experiment: AMP uses the beta_family denoiser");
        for (double c : config.denoiser.c_values) {
          Variant v;
          v.algo = algo;
          v.label = c_label(algo, c);
          v.oamp_nle = OampNle::soft_thresholding(c, config.denoiser.gamma);
          variants.push_back(std::move(v));
        }
        break;
      }
      case DenoiserConfig::Kind::BetaFamily: {
        if (algo != Algorithm::Amp)
          throw std::invalid_argument("run_experiment: beta_family applies to AMP only");
        for (double beta : config.denoiser.betas) {
          Variant v;
          v.algo = algo;
          v.is_amp = true;
          v.label = beta_label(beta);
          v.amp_nle = AmpNle::beta_family(beta, config.denoiser.beta_gamma);
          variants.push_back(std::move(v));
        }
        break;
      }
    }
  }
  return variants;
}

AmpSeVarianceRule matched_rule(const EnsembleSpec& ensemble) {
  return ensemble.kind == EnsembleKind::PartialOrthogonal
             ? AmpSeVarianceRule::PartialOrthogonal
             : AmpSeVarianceRule::IidGaussian;
}

void attach_se(std::vector<Variant>& variants, const ExperimentConfig& config,
               const SpectralModel& spec, double sigma2) {
  const double delta = double(config.n) / config.resolved_m();
  std::vector<Variant> extra;
  for (size_t vi = 0; vi < variants.size(); ++vi) {
    Variant& v = variants[vi];
    v.traj_source = int(vi);
    if (v.is_amp) {
      const AmpSeVarianceRule rule = config.amp_se_rule == AmpSeRuleChoice::Iid
                                         ? AmpSeVarianceRule::IidGaussian
                                         : matched_rule(config.ensemble);
      SEState se = se_amp(config.prior, v.amp_nle, delta, sigma2, config.iterations, rule);
      v.mse_se = se.mse_out;
      if (config.amp_se_rule == AmpSeRuleChoice::Both &&
          matched_rule(config.ensemble) == AmpSeVarianceRule::PartialOrthogonal) {
        Variant alt = v;
        alt.label += "|se=iid";
        SEState alt_se = se_amp(config.prior, v.amp_nle, delta, sigma2, config.iterations,
                                AmpSeVarianceRule::IidGaussian);
        alt.mse_se = alt_se.mse_out;
        extra.push_back(std::move(alt));
      }
    } else {
      OampSeConfig se_config;
      se_config.phi = phi_of(v.algo);
      se_config.nle = v.oamp_nle;
      se_config.sigma2 = sigma2;
      se_config.iterations = config.iterations;
      SEState se = run_se_oamp(spec, config.prior, se_config);
      v.mse_se = se.mse_out;
    }
  }
  for (Variant& v : extra) variants.push_back(std::move(v));
}

SpectralModel spectral_model_for_se_only(const ExperimentConfig& config) {
  const int m = config.resolved_m();
  const double delta = double(config.n) / m;
  switch (config.ensemble.kind) {
    case EnsembleKind::IIDGaussian:
      return SpectralModel::iid_gaussian_asymptotic(delta);
    case EnsembleKind::PartialOrthogonal:
      return SpectralModel::partial_orthogonal_asymptotic(delta);
    case EnsembleKind::GeometricConditioned: {
      Eigen::VectorXd lam = geometric_singular_values(config.ensemble, m, config.n);
      Eigen::VectorXd lambda2 = Eigen::VectorXd::Zero(config.n);
      lambda2.head(m) = lam.array().square();
      return SpectralModel::from_spectrum(std::move(lambda2));
    }
  }
  throw std::logic_error("spectral_model_for_se_only: unknown ensemble");
}

}  // namespace

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Amp: return "amp";
    case Algorithm::OampMF: return "oamp-mf";
    case Algorithm::OampPINV: return "oamp-pinv";
    case Algorithm::OampLMMSE: return "oamp-lmmse";
  }
  return "?";
}

int ExperimentConfig::resolved_m() const {
  const int mm = m > 0 ? m : int(std::lround(m_ratio * n));
  if (mm < 1 || mm > n) throw std::invalid_argument("ExperimentConfig: need 1 <= M <= N");
  return mm;
}

ResultTable run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1 || config.iterations < 1)
    throw std::invalid_argument("run_experiment: trials and iterations must be >= 1");
  const int m = config.resolved_m();
  const int n = config.n;

  // The SE prediction is computed once per config from the trial-0 matrix;
  // the geometric and partial orthogonal spectra are deterministic anyway.
  Rng rng0 = Rng::split(config.seed, 0, kStageMatrix);
  const MatrixModel model0 = sample_matrix(config.ensemble, m, n, rng0);
  const double sigma2_se = noise_variance_from_snr(model0, config.prior, config.snr_db);
  std::vector<Variant> variants = expand_variants(config);
  const int num_base = int(variants.size());  // variants running their own trajectory
  attach_se(variants, config, SpectralModel::from_model(model0), sigma2_se);

  struct TrialResult {
    std::vector<Trajectory> trajectories;  // per base variant
  };
  std::vector<TrialResult> trials(config.trials);

  SolverOptions options;
  options.iterations = config.iterations;
  options.early_stop_tol = 0.0;  // keep all iterations so curves align

  parallel_for(config.trials, [&](int trial) {
    Rng rng_matrix = Rng::split(config.seed, trial, kStageMatrix);
    Rng rng_signal = Rng::split(config.seed, trial, kStageSignal);
    Rng rng_noise = Rng::split(config.seed, trial, kStageNoise);
    const MatrixModel model =
        trial == 0 ? model0 : sample_matrix(config.ensemble, m, n, rng_matrix);
    const Eigen::VectorXd x = sample_signal(config.prior, n, rng_signal);
    const double sigma2 = noise_variance_from_snr(model, config.prior, config.snr_db);
    const Eigen::VectorXd y = make_observation(model, x, sigma2, rng_noise);
    const LinearSystem system(model, y, sigma2, x);

    TrialResult& result = trials[trial];
    result.trajectories.reserve(num_base);
    for (int vi = 0; vi < num_base; ++vi) {
      const Variant& v = variants[vi];
      if (v.is_amp) {
        result.trajectories.push_back(run_amp(system, v.amp_nle, options));
      } else {
        result.trajectories.push_back(run_oamp(system, le_kind_of(v.algo), v.oamp_nle, options));
      }
    }
  });

  ResultTable table;
  for (size_t vi = 0; vi < variants.size(); ++vi) {
    const Variant& v = variants[vi];
    for (int trial = 0; trial < config.trials; ++trial) {
      const Trajectory& traj = trials[trial].trajectories[v.traj_source];
      for (int t = 0; t < traj.iterations(); ++t) {
        ResultRow row;
        row.experiment = config.name;
        row.trial = trial;
        row.iteration = t;
        row.algorithm = v.label;
        row.mse_sim = traj.mse_out[t];
        row.mse_se = t < int(v.mse_se.size()) ? v.mse_se[t] : kNan;
        row.e_metric = accuracy_or_zero(row.mse_sim, row.mse_se);
        row.v2_hat = traj.v2_hat[t];
        row.tau2_hat = traj.tau2_hat[t];
        row.seed = config.seed;
        table.rows.push_back(std::move(row));
      }
    }
    // Aggregated mean over trials per iteration.
    for (int t = 0; t < config.iterations; ++t) {
      double sum_mse = 0.0, sum_v2 = 0.0, sum_tau2 = 0.0;
      int count = 0;
      for (int trial = 0; trial < config.trials; ++trial) {
        const Trajectory& traj = trials[trial].trajectories[v.traj_source];
        if (t >= traj.iterations()) continue;
        sum_mse += traj.mse_out[t];
        sum_v2 += traj.v2_hat[t];
        sum_tau2 += traj.tau2_hat[t];
        ++count;
      }
      if (count == 0) continue;
      ResultRow row;
      row.experiment = config.name;
      row.trial = -1;
      row.iteration = t;
      row.algorithm = v.label;
      row.mse_sim = sum_mse / count;
      row.mse_se = t < int(v.mse_se.size()) ? v.mse_se[t] : kNan;
      row.e_metric = accuracy_or_zero(row.mse_sim, row.mse_se);
      row.v2_hat = sum_v2 / count;
      row.tau2_hat = sum_tau2 / count;
      row.seed = config.seed;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultTable run_se_only(const ExperimentConfig& config) {
  const int m = config.resolved_m();
  const double delta = double(config.n) / m;
  // sigma2 from the ensemble trace: N for IID Gaussian and partial
  // orthogonal, sum(lambda^2) for the geometric ensemble.
  const SpectralModel spec = spectral_model_for_se_only(config);
  const double trace = spec.mean_lambda2() * config.n;
  const double sigma2 = trace / (m * std::pow(10.0, config.snr_db / 10.0));

  std::vector<Variant> variants = expand_variants(config);
  attach_se(variants, config, spec, sigma2);

  ResultTable table;
  for (const Variant& v : variants) {
    for (int t = 0; t < int(v.mse_se.size()); ++t) {
      ResultRow row;
      row.experiment = config.name;
      row.trial = -1;
      row.iteration = t;
      row.algorithm = v.label;
      row.mse_sim = kNan;
      row.mse_se = v.mse_se[t];
      row.e_metric = kNan;
      row.v2_hat = kNan;
      row.tau2_hat = kNan;
      row.seed = config.seed;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::vector<PtcRow> phase_transition(const PtcConfig& config) {
  if (config.threshold <= 0.0) throw std::invalid_argument("phase_transition: threshold must be > 0");
  const int g = config.grid;
  struct Point {
    double m_over_n, k_over_m;
    double amp_success = 0.0, oamp_success = 0.0;
  };
  std::vector<Point> points(g * g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      points[i * g + j].m_over_n = double(i + 1) / g;
      points[i * g + j].k_over_m = double(j + 1) / g;
    }

  const EnsembleSpec ensemble = EnsembleSpec::partial_orthogonal(config.ortho);
  SolverOptions options;
  options.iterations = config.iterations;

  parallel_for(int(points.size()), [&](int pi) {
    Point& point = points[pi];
    const int m = std::max(1, int(std::lround(point.m_over_n * config.n)));
    const int k = std::max(1, int(std::lround(point.k_over_m * m)));
    const Prior prior = Prior::bernoulli_gaussian(double(k) / config.n);
    int amp_ok = 0, oamp_ok = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t point_seed = config.seed + 1000003ull * std::uint64_t(pi);
      Rng rng_matrix = Rng::split(point_seed, trial, kStageMatrix);
      Rng rng_signal = Rng::split(point_seed, trial, kStageSignal);
      const MatrixModel model = sample_matrix(ensemble, m, config.n, rng_matrix);
      const Eigen::VectorXd x = sample_signal(prior, config.n, rng_signal);
      const Eigen::VectorXd y = model.apply(x);
      const LinearSystem system(model, y, 0.0, x);

      auto nmse = [&](const Eigen::VectorXd& x_hat) {
        const double denom = x.squaredNorm();
        const double err = (x_hat - x).squaredNorm();
        if (denom == 0.0) return err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        return err / denom;
      };
      const Trajectory amp = run_amp(system, AmpNle::posterior_mean(prior), options);
      if (nmse(amp.x_hat) < config.threshold) ++amp_ok;
      const Trajectory oamp =
          run_oamp(system, LinearEstimatorKind::MF, OampNle::mmse_optimal(prior), options);
      if (nmse(oamp.x_hat) < config.threshold) ++oamp_ok;
    }
    point.amp_success = double(amp_ok) / config.trials;
    point.oamp_success = double(oamp_ok) / config.trials;
  });

  std::vector<PtcRow> rows;
  rows.reserve(points.size() * 2);
  for (const Point& p : points) {
    rows.push_back({p.m_over_n, p.k_over_m, "amp", p.amp_success});
    rows.push_back({p.m_over_n, p.k_over_m, "oamp", p.oamp_success});
  }
  return rows;
}

namespace {
const char* kCsvHeader = "experiment,trial,iteration,algorithm,mse_sim,mse_se,E_metric,v2_hat,tau2_hat,seed";
}

void emit_csv(const ResultTable& table, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const ResultRow& r : table.rows) {
    out << r.experiment << ',';
    if (r.trial < 0) out << "mean";
    else out << r.trial;
    out << ',' << r.iteration << ',' << r.algorithm << ',' << format_double(r.mse_sim) << ','
        << format_double(r.mse_se) << ',' << format_double(r.e_metric) << ','
        << format_double(r.v2_hat) << ',' << format_double(r.tau2_hat) << ',' << r.seed << "\n";
  }
}

void emit_json(const ResultTable& table, std::ostream& out) {
  json rows = json::array();
  for (const ResultRow& r : table.rows) {
    json row;
    row["experiment"] = r.experiment;
    if (r.trial < 0) row["trial"] = "mean";
    else row["trial"] = r.trial;
    row["iteration"] = r.iteration;
    row["algorithm"] = r.algorithm;
    row["mse_sim"] = format_double(r.mse_sim);
    row["mse_se"] = format_double(r.mse_se);
    row["E_metric"] = format_double(r.e_metric);
    row["v2_hat"] = format_double(r.v2_hat);
    row["tau2_hat"] = format_double(r.tau2_hat);
    row["seed"] = r.seed;
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << "\n";
}

void emit(const ResultTable& table, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("emit: unknown format " + format);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot open " + path);
  if (format == "csv") emit_csv(table, out);
  else emit_json(table, out);
  if (!out) throw std::runtime_error("emit: write failed for " + path);
}

void emit_ptc_csv(const std::vector<PtcRow>& rows, std::ostream& out) {
  out << "m_over_n,k_over_m,algorithm,success_fraction\n";
  for (const PtcRow& r : rows)
    out << format_double(r.m_over_n) << ',' << format_double(r.k_over_m) << ',' << r.algorithm
        << ',' << format_double(r.success_fraction) << "\n";
}

void emit_ptc(const std::vector<PtcRow>& rows, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json")
    throw std::invalid_argument("emit_ptc: unknown format " + format);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_ptc: cannot open " + path);
  if (format == "csv") {
    emit_ptc_csv(rows, out);
  } else {
    json arr = json::array();
    for (const PtcRow& r : rows)
      arr.push_back({{"m_over_n", r.m_over_n},
                     {"k_over_m", r.k_over_m},
                     {"algorithm", r.algorithm},
                     {"success_fraction", r.success_fraction}});
    out << arr.dump(2) << "\n";
  }
}

namespace {

EnsembleSpec ensemble_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid_gaussian") return EnsembleSpec::iid_gaussian();
  if (kind == "geometric") {
    EnsembleSpec spec = EnsembleSpec::geometric(j.at("kappa").get<double>());
    spec.normalize_singular_squares = j.value("normalize_singular_squares", false);
    return spec;
  }
  if (kind == "partial_orthogonal") {
    const std::string ortho = j.value("ortho", "haar");
    if (ortho == "haar") return EnsembleSpec::partial_orthogonal(OrthoKind::Haar);
    if (ortho == "dct") return EnsembleSpec::partial_orthogonal(OrthoKind::DCT);
    if (ortho == "hadamard") return EnsembleSpec::partial_orthogonal(OrthoKind::Hadamard);
    throw std::invalid_argument("config: unknown ortho kind " + ortho);
  }
  throw std::invalid_argument("config: unknown ensemble kind " + kind);
}

json ensemble_to_json(const EnsembleSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind == EnsembleKind::GeometricConditioned) {
    j["kappa"] = spec.kappa;
    if (spec.normalize_singular_squares) j["normalize_singular_squares"] = true;
  }
  if (spec.kind == EnsembleKind::PartialOrthogonal) j["ortho"] = to_string(spec.ortho);
  return j;
}

Prior prior_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bpsk") return Prior::bpsk();
  if (kind == "bernoulli_gaussian") return Prior::bernoulli_gaussian(j.at("rho").get<double>());
  throw std::invalid_argument("config: unknown prior kind " + kind);
}

json prior_to_json(const Prior& prior) {
  json j;
  j["kind"] = to_string(prior.kind);
  if (prior.kind == PriorKind::BernoulliGaussian) j["rho"] = prior.rho;
  return j;
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "amp") return Algorithm::Amp;
  if (name == "oamp-mf") return Algorithm::OampMF;
  if (name == "oamp-pinv") return Algorithm::OampPINV;
  if (name == "oamp-lmmse") return Algorithm::OampLMMSE;
  throw std::invalid_argument("config: unknown algorithm " + name);
}

GammaRule gamma_from_json(const json& j) {
  const std::string rule = j.value("rule", "tau");
  const double value = j.value("value", 1.0);
  if (rule == "tau") return GammaRule::tau_scaled(value);
  if (rule == "fixed") return GammaRule::fixed(value);
  throw std::invalid_argument("config: unknown gamma rule " + rule);
}

DenoiserConfig denoiser_from_json(const json& j) {
  DenoiserConfig d;
  const std::string kind = j.value("kind", "mmse");
  if (kind == "mmse") {
    d.kind = DenoiserConfig::Kind::Mmse;
  } else if (kind == "soft_threshold") {
    d.kind = DenoiserConfig::Kind::SoftThreshold;
    if (j.contains("c_values")) d.c_values = j.at("c_values").get<std::vector<double>>();
    if (j.contains("gamma")) d.gamma = gamma_from_json(j.at("gamma"));
  } else if (kind == "beta_family") {
    d.kind = DenoiserConfig::Kind::BetaFamily;
    if (j.contains("betas")) d.betas = j.at("betas").get<std::vector<double>>();
    d.beta_gamma = j.value("gamma", 1.0);
  } else {
    throw std::invalid_argument("config: unknown denoiser kind " + kind);
  }
  return d;
}

json denoiser_to_json(const DenoiserConfig& d) {
  json j;
  switch (d.kind) {
    case DenoiserConfig::Kind::Mmse:
      j["kind"] = "mmse";
      break;
    case DenoiserConfig::Kind::SoftThreshold:
      j["kind"] = "soft_threshold";
      j["c_values"] = d.c_values;
      j["gamma"] = {{"rule", d.gamma.kind == GammaRule::Kind::Fixed ? "fixed" : "tau"},
                    {"value", d.gamma.value}};
      break;
    case DenoiserConfig::Kind::BetaFamily:
      j["kind"] = "beta_family";
      j["betas"] = d.betas;
      j["gamma"] = d.beta_gamma;
      break;
  }
  return j;
}

}  // namespace

ExperimentConfig experiment_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig config;
  config.name = j.value("name", "experiment");
  config.ensemble = ensemble_from_json(j.at("ensemble"));
  config.n = j.at("n").get<int>();
  config.m = j.value("m", 0);
  config.m_ratio = j.value("m_ratio", 0.5);
  config.prior = prior_from_json(j.at("prior"));
  config.snr_db = j.at("snr_db").get<double>();
  config.algorithms.clear();
  for (const auto& name : j.at("algorithms"))
    config.algorithms.push_back(algorithm_from_string(name.get<std::string>()));
  if (j.contains("denoiser")) config.denoiser = denoiser_from_json(j.at("denoiser"));
  config.iterations = j.value("iterations", 30);
  config.trials = j.value("trials", 50);
  config.seed = j.value("seed", std::uint64_t(1));
  const std::string rule = j.value("amp_se_rule", "matched");
  if (rule == "matched") config.amp_se_rule = AmpSeRuleChoice::Matched;
  else if (rule == "iid") config.amp_se_rule = AmpSeRuleChoice::Iid;
  else if (rule == "both") config.amp_se_rule = AmpSeRuleChoice::Both;
  else throw std::invalid_argument("config: unknown amp_se_rule " + rule);
  return config;
}

std::string experiment_to_json(const ExperimentConfig& config) {
  json j;
  j["name"] = config.name;
  j["ensemble"] = ensemble_to_json(config.ensemble);
  j["n"] = config.n;
  if (config.m > 0) j["m"] = config.m;
  else j["m_ratio"] = config.m_ratio;
  j["prior"] = prior_to_json(config.prior);
  j["snr_db"] = config.snr_db;
  json algos = json::array();
  for (Algorithm a : config.algorithms) algos.push_back(to_string(a));
  j["algorithms"] = std::move(algos);
  j["denoiser"] = denoiser_to_json(config.denoiser);
  j["iterations"] = config.iterations;
  j["trials"] = config.trials;
  j["seed"] = config.seed;
  switch (config.amp_se_rule) {
    case AmpSeRuleChoice::Matched: j["amp_se_rule"] = "matched"; break;
    case AmpSeRuleChoice::Iid: j["amp_se_rule"] = "iid"; break;
    case AmpSeRuleChoice::Both: j["amp_se_rule"] = "both"; break;
  }
  return j.dump(2);
}

PtcConfig ptc_from_json(const std::string& text) {
  const json j = json::parse(text);
  PtcConfig config;
  config.name = j.value("name", "ptc");
  config.n = j.value("n", 512);
  config.grid = j.value("grid", 10);
  config.trials = j.value("trials", 20);
  config.iterations = j.value("iterations", 50);
  config.threshold = j.value("threshold", 1e-4);
  config.seed = j.value("seed", std::uint64_t(1));
  const std::string ortho = j.value("ortho", "dct");
  if (ortho == "haar") config.ortho = OrthoKind::Haar;
  else if (ortho == "dct") config.ortho = OrthoKind::DCT;
  else if (ortho == "hadamard") config.ortho = OrthoKind::Hadamard;
  else throw std::invalid_argument("config: unknown ortho kind " + ortho);
  return config;
}

std::string ptc_to_json(const PtcConfig& config) {
  json j;
  j["name"] = config.name;
  j["n"] = config.n;
  j["grid"] = config.grid;
  j["trials"] = config.trials;
  j["iterations"] = config.iterations;
  j["threshold"] = config.threshold;
  j["ortho"] = to_string(config.ortho);
  j["seed"] = config.seed;
  return j.dump(2);
}

std::vector<std::string> preset_names() {
  return {"beta-sweep-gaussian", "beta-sweep-dct", "bpsk-gaussian", "ill-conditioned", "ptc-dct",
          "partial-haar", "partial-dct", "partial-hadamard", "soft-threshold-dct"};
}

bool is_preset(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ExperimentConfig preset_experiment(const std::string& name) {
  ExperimentConfig config;
  config.name = name;
  if (name == "beta-sweep-gaussian" || name == "beta-sweep-dct") {
    config.ensemble = name == "beta-sweep-dct" ? EnsembleSpec::partial_orthogonal(OrthoKind::DCT)
                                         : EnsembleSpec::iid_gaussian();
    config.n = 2048;
    config.m_ratio = 0.7;
    config.prior = Prior::bernoulli_gaussian(0.4);
    config.snr_db = 50.0;
    config.algorithms = {Algorithm::Amp};
    config.denoiser.kind = DenoiserConfig::Kind::BetaFamily;
    config.denoiser.betas = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    config.denoiser.beta_gamma = 1.0;
    config.iterations = 50;
    config.trials = 50;
    config.seed = 101;
    // The DCT sweep also emits the IID-rule SE rows so both prediction
    // variants land in one table.
    config.amp_se_rule = name == "beta-sweep-dct" ? AmpSeRuleChoice::Both
                                                  : AmpSeRuleChoice::Matched;
    return config;
  }
  if (name == "bpsk-gaussian") {
    config.ensemble = EnsembleSpec::iid_gaussian();
    config.n = 2048;
    config.m_ratio = 0.65;
    config.prior = Prior::bpsk();
    config.snr_db = 14.0;
    config.algorithms = {Algorithm::Amp, Algorithm::OampMF, Algorithm::OampPINV,
                         Algorithm::OampLMMSE};
    config.iterations = 30;
    config.trials = 100;
    config.seed = 102;
    return config;
  }
  if (name == "ill-conditioned") {
    config.ensemble = EnsembleSpec::geometric(5.0);
    config.n = 1000;
    config.m = 500;
    config.prior = Prior::bernoulli_gaussian(0.2);
    config.snr_db = 60.0;
    config.algorithms = {Algorithm::OampMF, Algorithm::OampPINV, Algorithm::OampLMMSE};
    config.iterations = 30;
    config.trials = 100;
    config.seed = 103;
    return config;
  }
  if (name == "partial-haar" || name == "partial-dct" || name == "partial-hadamard") {
    OrthoKind ortho = OrthoKind::Haar;
    if (name == "partial-dct") ortho = OrthoKind::DCT;
    if (name == "partial-hadamard") ortho = OrthoKind::Hadamard;
    config.ensemble = EnsembleSpec::partial_orthogonal(ortho);
    config.n = 1024;
    config.m_ratio = 0.35;
    config.prior = Prior::bernoulli_gaussian(0.1);
    config.snr_db = 50.0;
    config.algorithms = {Algorithm::OampLMMSE};
    config.iterations = 30;
    config.trials = 50;
    config.seed = 106;
    return config;
  }
  if (name == "soft-threshold-dct") {
    config.ensemble = EnsembleSpec::partial_orthogonal(OrthoKind::DCT);
    config.n = 2048;
    config.m_ratio = 0.35;
    config.prior = Prior::bernoulli_gaussian(0.1);
    config.snr_db = 50.0;
    config.algorithms = {Algorithm::OampLMMSE};
    config.denoiser.kind = DenoiserConfig::Kind::SoftThreshold;
    config.denoiser.c_values = {1.0, 2.0, 3.0};
    config.denoiser.gamma = GammaRule::tau_scaled(1.0);
    config.iterations = 30;
    config.trials = 50;
    config.seed = 107;
    return config;
  }
  throw std::invalid_argument("preset_experiment: unknown preset " + name);
}

PtcConfig preset_ptc() {
  PtcConfig config;
  config.name = "ptc-dct";
  config.n = 512;
  config.grid = 10;
  config.trials = 20;
  config.iterations = 50;
  config.threshold = 1e-4;
  config.ortho = OrthoKind::DCT;
  config.seed = 105;
  return config;
}

}  // namespace oamp
