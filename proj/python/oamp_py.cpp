// Python bindings for the AMP/OAMP toolkit: priors and matrix ensembles,
// the two solvers, the state evolution engines, and the experiment harness.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oamp/harness.hpp"

namespace py = pybind11;
using namespace oamp;

PYBIND11_MODULE(_oamp, m) {
  m.doc() = "AMP and Orthogonal AMP signal recovery with state evolution";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("split", &Rng::split, py::arg("base_seed"), py::arg("trial"), py::arg("stage"))
      .def("uniform", &Rng::uniform)
      .def("gaussian", &Rng::gaussian);

  py::class_<Prior>(m, "Prior")
      .def_static("bpsk", &Prior::bpsk)
      .def_static("bernoulli_gaussian", &Prior::bernoulli_gaussian, py::arg("rho"))
      .def_readonly("rho", &Prior::rho)
      .def("second_moment", &Prior::second_moment);

  py::enum_<OrthoKind>(m, "OrthoKind")
      .value("Haar", OrthoKind::Haar)
      .value("DCT", OrthoKind::DCT)
      .value("Hadamard", OrthoKind::Hadamard);

  py::class_<EnsembleSpec>(m, "EnsembleSpec")
      .def_static("iid_gaussian", &EnsembleSpec::iid_gaussian)
      .def_static("geometric", &EnsembleSpec::geometric, py::arg("kappa"))
      .def_static("partial_orthogonal", &EnsembleSpec::partial_orthogonal, py::arg("ortho"));

  py::class_<MatrixModel>(m, "MatrixModel")
      .def_property_readonly("m", &MatrixModel::rows)
      .def_property_readonly("n", &MatrixModel::cols)
      .def("apply", &MatrixModel::apply, py::arg("x"))
      .def("apply_transpose", &MatrixModel::apply_transpose, py::arg("y"))
      .def("spectrum", [](const MatrixModel& model) { return model.spectrum(); })
      .def("trace_gram", &MatrixModel::trace_gram)
      .def("dense", [](const MatrixModel& model) { return model.dense(); })
      .def("save", &save_matrix_model, py::arg("path"));

  m.def("sample_matrix", &sample_matrix, py::arg("spec"), py::arg("m"), py::arg("n"),
        py::arg("rng"));
  m.def("load_matrix_model", &load_matrix_model, py::arg("path"));
  m.def("haar_orthogonal", &haar_orthogonal, py::arg("n"), py::arg("rng"));
  m.def("sample_signal", &sample_signal, py::arg("prior"), py::arg("n"), py::arg("rng"));
  m.def(
      "make_observation",
      [](const MatrixModel& a, const Eigen::VectorXd& x, double sigma2, Rng& rng) {
        return make_observation(a, x, sigma2, rng);
      },
      py::arg("a"), py::arg("x"), py::arg("sigma2"), py::arg("rng"));
  m.def("noise_variance_from_snr", &noise_variance_from_snr, py::arg("a"), py::arg("prior"),
        py::arg("snr_db"));

  m.def("soft_threshold", &soft_threshold, py::arg("r"), py::arg("gamma"));
  m.def("posterior_mean", &posterior_mean, py::arg("prior"), py::arg("r"), py::arg("tau2"));
  m.def("posterior_var", &posterior_var, py::arg("prior"), py::arg("r"), py::arg("tau2"));
  m.def("mmse_b", &mmse_b, py::arg("prior"), py::arg("tau2"), py::arg("quad_order") = 61);
  m.def("optimal_c", &optimal_c, py::arg("tau2"), py::arg("mmse_b_value"));

  py::class_<LinearSystem>(m, "LinearSystem")
      .def(py::init<MatrixModel, Eigen::VectorXd, double, std::optional<Eigen::VectorXd>>(),
           py::arg("model"), py::arg("y"), py::arg("sigma2"), py::arg("x_true") = std::nullopt)
      .def_readonly("y", &LinearSystem::y)
      .def_readonly("sigma2", &LinearSystem::sigma2);

  py::enum_<LinearEstimatorKind>(m, "LinearEstimatorKind")
      .value("MF", LinearEstimatorKind::MF)
      .value("PINV", LinearEstimatorKind::PINV)
      .value("LMMSE", LinearEstimatorKind::LMMSE);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("mse_out", &Trajectory::mse_out)
      .def_readonly("v2_true", &Trajectory::v2_true)
      .def_readonly("tau2_true", &Trajectory::tau2_true)
      .def_readonly("v2_hat", &Trajectory::v2_hat)
      .def_readonly("tau2_hat", &Trajectory::tau2_hat)
      .def_readonly("dbar", &Trajectory::dbar)
      .def_readonly("orth_hq", &Trajectory::orth_hq)
      .def_readonly("orth_hx", &Trajectory::orth_hx)
      .def_readonly("x_hat", &Trajectory::x_hat)
      .def_property_readonly("diverged",
                             [](const Trajectory& t) { return t.status == Trajectory::Status::Diverged; })
      .def("iterations", &Trajectory::iterations);

  m.def(
      "run_amp",
      [](const LinearSystem& system, const Prior& prior, int iterations) {
        return run_amp(system, AmpNle::posterior_mean(prior), SolverOptions{iterations, 1e-12});
      },
      py::arg("system"), py::arg("prior"), py::arg("iterations") = 50,
      "AMP with the posterior-mean denoiser");
  m.def(
      "run_amp_beta",
      [](const LinearSystem& system, double beta, double gamma, int iterations) {
        return run_amp(system, AmpNle::beta_family(beta, gamma), SolverOptions{iterations, 1e-12});
      },
      py::arg("system"), py::arg("beta"), py::arg("gamma") = 1.0, py::arg("iterations") = 50,
      "AMP with the soft-threshold beta family");
  m.def(
      "run_oamp",
      [](const LinearSystem& system, LinearEstimatorKind kind, const Prior& prior,
         int iterations) {
        return run_oamp(system, kind, OampNle::mmse_optimal(prior),
                        SolverOptions{iterations, 1e-12});
      },
      py::arg("system"), py::arg("le_kind"), py::arg("prior"), py::arg("iterations") = 50,
      "OAMP with the optimal divergence-free posterior-mean denoiser");
  m.def(
      "run_oamp_soft",
      [](const LinearSystem& system, LinearEstimatorKind kind, double c, double gamma_factor,
         int iterations) {
        return run_oamp(system, kind,
                        OampNle::soft_thresholding(c, GammaRule::tau_scaled(gamma_factor)),
                        SolverOptions{iterations, 1e-12});
      },
      py::arg("system"), py::arg("le_kind"), py::arg("c") = 1.0, py::arg("gamma_factor") = 1.0,
      py::arg("iterations") = 50, "OAMP with the divergence-free soft threshold");

  py::class_<SpectralModel>(m, "SpectralModel")
      .def_static("from_spectrum", &SpectralModel::from_spectrum, py::arg("lambda2"))
      .def_static("from_model", &SpectralModel::from_model, py::arg("model"))
      .def_static("iid_gaussian_asymptotic", &SpectralModel::iid_gaussian_asymptotic,
                  py::arg("delta"))
      .def_static("partial_orthogonal_asymptotic", &SpectralModel::partial_orthogonal_asymptotic,
                  py::arg("delta"))
      .def("mean_lambda2", &SpectralModel::mean_lambda2);

  py::class_<SEState>(m, "SEState")
      .def_readonly("v2", &SEState::v2)
      .def_readonly("tau2", &SEState::tau2)
      .def_readonly("mse_out", &SEState::mse_out)
      .def_readonly("converged", &SEState::converged)
      .def_readonly("v2_fixed", &SEState::v2_fixed)
      .def_readonly("tau2_fixed", &SEState::tau2_fixed);

  py::class_<FixedPoint>(m, "FixedPoint")
      .def_readonly("v2", &FixedPoint::v2)
      .def_readonly("tau2", &FixedPoint::tau2)
      .def_readonly("iterations", &FixedPoint::iterations)
      .def_readonly("converged", &FixedPoint::converged);

  m.def("mmse_a", &mmse_a, py::arg("spec"), py::arg("v2"), py::arg("sigma2"));
  m.def("phi_star", &phi_star, py::arg("spec"), py::arg("v2"), py::arg("sigma2"));
  m.def("psi_star", &psi_star, py::arg("prior"), py::arg("tau2"));
  m.def("psi_out_star", &psi_out_star, py::arg("prior"), py::arg("tau2"));
  m.def("phi_empirical", &phi_empirical, py::arg("spec"), py::arg("ghat"), py::arg("v2"),
        py::arg("sigma2"));
  m.def("ghat_for_kind", &ghat_for_kind, py::arg("spec"), py::arg("kind"), py::arg("v2"),
        py::arg("sigma2"));
  m.def("se_accuracy", &se_accuracy, py::arg("mse_sim"), py::arg("mse_se"));
  m.def(
      "se_amp",
      [](const Prior& prior, double delta, double sigma2, int iterations, bool partial_rule) {
        return se_amp(prior, AmpNle::posterior_mean(prior), delta, sigma2, iterations,
                      partial_rule ? AmpSeVarianceRule::PartialOrthogonal
                                   : AmpSeVarianceRule::IidGaussian);
      },
      py::arg("prior"), py::arg("delta"), py::arg("sigma2"), py::arg("iterations") = 50,
      py::arg("partial_rule") = false, "AMP state evolution with the posterior-mean denoiser");
  m.def(
      "se_oamp",
      [](const SpectralModel& spec, const Prior& prior, LinearEstimatorKind kind, double sigma2,
         int iterations) {
        OampSeConfig config;
        switch (kind) {
          case LinearEstimatorKind::MF: config.phi = OampSeConfig::Phi::MF; break;
          case LinearEstimatorKind::PINV: config.phi = OampSeConfig::Phi::PINV; break;
          case LinearEstimatorKind::LMMSE: config.phi = OampSeConfig::Phi::LMMSE; break;
        }
        config.nle = OampNle::mmse_optimal(prior);
        config.sigma2 = sigma2;
        config.iterations = iterations;
        return run_se_oamp(spec, prior, config);
      },
      py::arg("spec"), py::arg("prior"), py::arg("le_kind"), py::arg("sigma2"),
      py::arg("iterations") = 50, "OAMP state evolution with the optimal denoiser");
  m.def("fixed_point", &fixed_point, py::arg("spec"), py::arg("prior"), py::arg("sigma2"),
        py::arg("tol") = 1e-12, py::arg("maxiter") = 10000);
  m.def("r_transform", &r_transform, py::arg("spec"), py::arg("z"));
  m.def("r_transform_residual", &r_transform_residual, py::arg("spec"), py::arg("fp"),
        py::arg("prior"), py::arg("sigma2"));

  m.def(
      "run_experiment_json",
      [](const std::string& config_json, const std::string& out_path, const std::string& format) {
        const ExperimentConfig config = experiment_from_json(config_json);
        emit(run_experiment(config), out_path, format);
      },
      py::arg("config_json"), py::arg("out_path"), py::arg("format") = "csv",
      "Run a JSON-configured experiment and write the result table");
  m.def(
      "run_preset",
      [](const std::string& name, const std::string& out_path, const std::string& format) {
        emit(run_experiment(preset_experiment(name)), out_path, format);
      },
      py::arg("name"), py::arg("out_path"), py::arg("format") = "csv");
  m.def("preset_names", &preset_names);
  m.def("experiment_to_json",
        [](const std::string& name) { return experiment_to_json(preset_experiment(name)); },
        py::arg("preset_name"), "JSON text of a named preset");
}
