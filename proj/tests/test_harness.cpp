#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oamp/harness.hpp"

using namespace oamp;

namespace {

ExperimentConfig smoke_config() {
  ExperimentConfig config;
  config.name = "smoke";
  config.ensemble = EnsembleSpec::partial_orthogonal(OrthoKind::DCT);
  config.n = 64;
  config.m = 64;
  config.prior = Prior::bpsk();
  config.snr_db = 300.0;  // effectively noiseless
  config.algorithms = {Algorithm::OampPINV};
  config.iterations = 1;
  config.trials = 1;
  config.seed = 5;
  return config;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("smoke experiment recovers exactly") {
    const ResultTable table = run_experiment(smoke_config());
    REQUIRE(table.rows.size() == 2);  // one trial row + one mean row
    CHECK(table.rows[0].trial == 0);
    CHECK(table.rows[0].mse_sim < 1e-25);
    CHECK(table.rows[1].trial == -1);
    CHECK(table.rows[1].mse_sim < 1e-25);
  }

  TEST_CASE("csv header matches the row schema") {
    ResultTable table;
    std::ostringstream out;
    emit_csv(table, out);
    CHECK(out.str() ==
          "experiment,trial,iteration,algorithm,mse_sim,mse_se,E_metric,v2_hat,tau2_hat,seed\n");
  }

  TEST_CASE("csv round-trips one row at 17 significant digits") {
    ResultTable table;
    ResultRow row;
    row.experiment = "t";
    row.trial = 3;
    row.iteration = 1;
    row.algorithm = "oamp-lmmse";
    row.mse_sim = 0.12345678901234567;
    row.mse_se = 1.0 / 3.0;
    row.e_metric = 2.0;
    row.v2_hat = 1e-9;
    row.tau2_hat = 3.5e4;
    row.seed = 77;
    table.rows.push_back(row);
    std::ostringstream out;
    emit_csv(table, out);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    std::istringstream fields(line);
    std::string tok;
    std::getline(fields, tok, ',');
    CHECK(tok == "t");
    std::getline(fields, tok, ',');
    CHECK(tok == "3");
    std::getline(fields, tok, ',');
    std::getline(fields, tok, ',');
    std::getline(fields, tok, ',');
    CHECK(std::stod(tok) == row.mse_sim);  // bit-exact through %.17g
    std::getline(fields, tok, ',');
    CHECK(std::stod(tok) == row.mse_se);
  }

  TEST_CASE("experiment output is deterministic across reruns") {
    ExperimentConfig config = preset_experiment("partial-dct");
    config.n = 128;
    config.m = 0;
    config.trials = 4;
    config.iterations = 6;
    std::ostringstream a, b;
    emit_csv(run_experiment(config), a);
    emit_csv(run_experiment(config), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().size() > 1000);
  }

  TEST_CASE("aggregated mean rows equal the mean of the trial rows") {
    ExperimentConfig config = preset_experiment("partial-dct");
    config.n = 128;
    config.m = 0;
    config.trials = 5;
    config.iterations = 4;
    const ResultTable table = run_experiment(config);
    for (int t = 0; t < config.iterations; ++t) {
      double acc = 0.0;
      int count = 0;
      double mean_val = -1.0;
      for (const ResultRow& row : table.rows) {
        if (row.iteration != t) continue;
        if (row.trial >= 0) {
          acc += row.mse_sim;
          ++count;
        } else {
          mean_val = row.mse_sim;
        }
      }
      REQUIRE(count == config.trials);
      CHECK(mean_val == doctest::Approx(acc / count).epsilon(1e-15));
    }
  }

  TEST_CASE("config json round trip") {
    ExperimentConfig config = preset_experiment("ill-conditioned");
    const std::string text = experiment_to_json(config);
    const ExperimentConfig back = experiment_from_json(text);
    CHECK(back.name == config.name);
    CHECK(back.ensemble.kind == config.ensemble.kind);
    CHECK(back.ensemble.kappa == config.ensemble.kappa);
    CHECK(back.n == config.n);
    CHECK(back.m == config.m);
    CHECK(back.prior.kind == config.prior.kind);
    CHECK(back.prior.rho == config.prior.rho);
    CHECK(back.snr_db == config.snr_db);
    CHECK(back.algorithms == config.algorithms);
    CHECK(back.trials == config.trials);
    CHECK(back.seed == config.seed);

    const PtcConfig ptc = preset_ptc();
    const PtcConfig ptc_back = ptc_from_json(ptc_to_json(ptc));
    CHECK(ptc_back.n == ptc.n);
    CHECK(ptc_back.grid == ptc.grid);
    CHECK(ptc_back.threshold == ptc.threshold);
  }

  TEST_CASE("bad configs rejected with diagnostics") {
    CHECK_THROWS_AS(experiment_from_json("{\"n\": 16}"), std::exception);
    CHECK_THROWS_AS(preset_experiment("nope"), std::invalid_argument);
    ExperimentConfig config = smoke_config();
    config.m = 100;  // > n
    CHECK_THROWS_AS(run_experiment(config), std::invalid_argument);
  }

  TEST_CASE("presets are listed and loadable") {
    const auto names = preset_names();
    CHECK(names.size() >= 8);
    for (const std::string& name : names) {
      if (name == "ptc-dct") continue;
      CHECK_NOTHROW(preset_experiment(name));
      CHECK(is_preset(name));
    }
  }

  TEST_CASE("se-only tables cover every variant") {
    ExperimentConfig config = preset_experiment("bpsk-gaussian");
    config.iterations = 8;
    const ResultTable table = run_se_only(config);
    CHECK(table.rows.size() == 4 * 8);  // amp + three oamp kinds
    for (const ResultRow& row : table.rows) {
      CHECK(std::isfinite(row.mse_se));
      CHECK(row.mse_se > 0.0);
    }
  }

  TEST_CASE("phase transition grid honors the easy corners") {
    PtcConfig config;
    config.n = 128;
    config.grid = 2;   // m/n and k/m in {0.5, 1.0}
    config.trials = 6;
    config.iterations = 40;
    config.seed = 9;
    const auto rows = phase_transition(config);
    REQUIRE(rows.size() == 8);
    for (const PtcRow& row : rows) {
      if (row.m_over_n == 1.0 && row.algorithm == "oamp") {
        // invertible system: exact recovery for any sparsity
        CHECK(row.success_fraction == 1.0);
      }
      if (row.k_over_m == 1.0 && row.m_over_n == 0.5) {
        // dense signal, underdetermined system: both algorithms fail
        CHECK(row.success_fraction == 0.0);
      }
    }
  }

  TEST_CASE("emit writes files in both formats") {
    const ResultTable table = run_experiment(smoke_config());
    emit(table, "harness_smoke.csv", "csv");
    emit(table, "harness_smoke.json", "json");
    std::ifstream csv("harness_smoke.csv");
    std::string first;
    std::getline(csv, first);
    CHECK(first.rfind("experiment,", 0) == 0);
    std::ifstream js("harness_smoke.json");
    std::stringstream buf;
    buf << js.rdbuf();
    CHECK(buf.str().find("\"algorithm\": \"oamp-pinv\"") != std::string::npos);
    CHECK_THROWS_AS(emit(table, "x.bad", "yaml"), std::invalid_argument);
    std::remove("harness_smoke.csv");
    std::remove("harness_smoke.json");
  }
}
