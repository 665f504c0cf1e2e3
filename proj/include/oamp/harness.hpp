#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oamp/ensembles.hpp"
#include "oamp/model.hpp"
#include "oamp/sevo.hpp"
#include "oamp/solvers.hpp"

namespace oamp {

enum class Algorithm { Amp, OampMF, OampPINV, OampLMMSE };

std::string to_string(Algorithm algo);

struct DenoiserConfig {
  enum class Kind { Mmse, SoftThreshold, BetaFamily };
  Kind kind = Kind::Mmse;
  std::vector<double> c_values = {1.0, 2.0, 3.0};  // SoftThreshold
  GammaRule gamma = GammaRule::tau_scaled();       // SoftThreshold
  std::vector<double> betas = {0.0};               // BetaFamily
  double beta_gamma = 1.0;                         // BetaFamily fixed threshold
};

/// Which LE variance rule the AMP state evolution uses: matched picks the
/// rule implied by the ensemble (partial orthogonal matrices get the
/// (N-M)/M rule); both emits a second row set under the IID rule.
enum class AmpSeRuleChoice { Matched, Iid, Both };

struct ExperimentConfig {
  std::string name = "experiment";
  EnsembleSpec ensemble;
  int n = 1024;
  int m = 0;  // 0: derive from m_ratio
  double m_ratio = 0.5;
  Prior prior;
  double snr_db = 50.0;
  std::vector<Algorithm> algorithms = {Algorithm::OampLMMSE};
  DenoiserConfig denoiser;
  int iterations = 30;
  int trials = 50;
  std::uint64_t seed = 1;
  AmpSeRuleChoice amp_se_rule = AmpSeRuleChoice::Matched;

  int resolved_m() const;
};

struct ResultRow {
  std::string experiment;
  int trial = -1;  // -1: aggregated mean over trials
  int iteration = 0;
  std::string algorithm;
  double mse_sim = 0.0;
  double mse_se = 0.0;
  double e_metric = 0.0;
  double v2_hat = 0.0;
  double tau2_hat = 0.0;
  std::uint64_t seed = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

/// Runs every (algorithm x denoiser-variant) of the config over seeded
/// trials, attaches the per-config SE prediction, and appends aggregated
/// mean rows. Deterministic under the base seed regardless of trial-level
/// parallelism. Solver failures truncate the affected trial's rows.
ResultTable run_experiment(const ExperimentConfig& config);

/// SE-only table (no sampling): asymptotic spectra for IID Gaussian and
/// partial orthogonal ensembles, the deterministic spectrum for the
/// geometric ensemble.
ResultTable run_se_only(const ExperimentConfig& config);

struct PtcConfig {
  std::string name = "ptc";
  int n = 512;
  int grid = 10;
  int trials = 20;
  int iterations = 50;
  double threshold = 1e-4;  // success when NMSE < threshold
  OrthoKind ortho = OrthoKind::DCT;
  std::uint64_t seed = 1;
};

struct PtcRow {
  double m_over_n = 0.0;
  double k_over_m = 0.0;
  std::string algorithm;
  double success_fraction = 0.0;
};

/// Noiseless empirical phase transition over the (M/N, K/M) grid for AMP
/// and OAMP with Bernoulli-Gaussian signals.
std::vector<PtcRow> phase_transition(const PtcConfig& config);

void emit_csv(const ResultTable& table, std::ostream& out);
void emit_json(const ResultTable& table, std::ostream& out);
void emit(const ResultTable& table, const std::string& path, const std::string& format);
void emit_ptc_csv(const std::vector<PtcRow>& rows, std::ostream& out);
void emit_ptc(const std::vector<PtcRow>& rows, const std::string& path, const std::string& format);

ExperimentConfig experiment_from_json(const std::string& text);
std::string experiment_to_json(const ExperimentConfig& config);
PtcConfig ptc_from_json(const std::string& text);
std::string ptc_to_json(const PtcConfig& config);

/// Named presets for the bundled simulation studies at desk scale.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ExperimentConfig preset_experiment(const std::string& name);
PtcConfig preset_ptc();

}  // namespace oamp
