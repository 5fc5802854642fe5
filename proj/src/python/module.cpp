#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plsmode/asymptotics.hpp"
#include "plsmode/config.hpp"
#include "plsmode/distributions.hpp"
#include "plsmode/errors.hpp"
#include "plsmode/modeselect.hpp"
#include "plsmode/montecarlo.hpp"
#include "plsmode/repro.hpp"
#include "plsmode/secrecy.hpp"
#include "plsmode/specfun.hpp"
#include "plsmode/version.hpp"

namespace py = pybind11;
using namespace plsmode;

namespace {

TrialStats run_trials_wrapper(const SystemConfig& cfg, long trials,
                              const std::vector<double>& rates, std::uint64_t seed,
                              bool strict_scheduling, int workers,
                              bool collect_secrecy_samples) {
    RunSpec spec;
    spec.n_trials = trials;
    spec.rate_grid = rates;
    spec.seed = seed;
    spec.model = strict_scheduling ? SchedulingModel::strict_assign
                                   : SchedulingModel::faithful;
    spec.n_workers = workers;
    spec.collect_secrecy_samples = collect_secrecy_samples;
    return run_trials(cfg, spec);
}

}  // namespace

PYBIND11_MODULE(_plsmode, m) {
    m.doc() = "Secrecy outage capacity and transmission mode selection for "
              "multi-user multi-antenna downlinks with a passive eavesdropper";
    m.attr("__version__") = PLSMODE_VERSION;

    py::register_exception<numerical_instability_error>(m, "NumericalInstabilityError",
                                                        PyExc_ArithmeticError);
    py::register_exception<convergence_error>(m, "ConvergenceError",
                                              PyExc_ArithmeticError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init([](int n_antennas, int n_users, int mode, double snr,
                         double eav_path_gain, double outage_target) {
                 SystemConfig cfg{n_antennas, n_users, mode, snr, eav_path_gain,
                                  outage_target};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("n_antennas") = 4, py::arg("n_users") = 10, py::arg("mode") = 1,
             py::arg("snr") = 1.0, py::arg("eav_path_gain") = 0.01,
             py::arg("outage_target") = 0.05)
        .def_readwrite("n_antennas", &SystemConfig::n_antennas)
        .def_readwrite("n_users", &SystemConfig::n_users)
        .def_readwrite("mode", &SystemConfig::mode)
        .def_readwrite("snr", &SystemConfig::snr)
        .def_readwrite("eav_path_gain", &SystemConfig::eav_path_gain)
        .def_readwrite("outage_target", &SystemConfig::outage_target)
        .def("validate", &SystemConfig::validate)
        .def("eav_snr", &SystemConfig::eav_snr);

    py::enum_<Regime>(m, "Regime")
        .value("general", Regime::general)
        .value("noise_limited", Regime::noise_limited)
        .value("interference_limited", Regime::interference_limited)
        .value("large_k", Regime::large_k);

    m.def("rho_from_tsnr_db", &rho_from_tsnr_db, py::arg("tsnr_db"));
    m.def("tsnr_db_from_rho", &tsnr_db_from_rho, py::arg("rho"));

    py::enum_<WMethod>(m, "WMethod")
        .value("closed_form", WMethod::closed_form)
        .value("recurrence", WMethod::recurrence)
        .value("quadrature", WMethod::quadrature);

    py::class_<WEval>(m, "WEval")
        .def_readonly("value", &WEval::value)
        .def_readonly("method", &WEval::method)
        .def_readonly("est_abs_error", &WEval::est_abs_error)
        .def("__float__", [](const WEval& w) { return w.value; });

    m.def("exp_integral_ei", &exp_integral_ei, py::arg("x"));
    m.def("w_function", &w_function, py::arg("x"), py::arg("n"));
    m.def("w_function_quadrature", &w_function_quadrature, py::arg("x"), py::arg("n"),
          py::arg("abs_tol") = 1e-10);

    m.def("cdf_single_user_sinr", &cdf_single_user_sinr, py::arg("x"), py::arg("cfg"));
    m.def("cdf_scheduled_sinr", &cdf_scheduled_sinr, py::arg("x"), py::arg("cfg"));
    m.def("pdf_eavesdropper_sinr", &pdf_eavesdropper_sinr, py::arg("y"), py::arg("cfg"));
    m.def("cdf_eavesdropper_sinr", &cdf_eavesdropper_sinr, py::arg("y"), py::arg("cfg"));

    py::enum_<OutageMethod>(m, "OutageMethod")
        .value("closed_form", OutageMethod::closed_form)
        .value("quadrature", OutageMethod::quadrature);

    py::class_<OutageSolveResult>(m, "OutageSolveResult")
        .def_readonly("rate", &OutageSolveResult::rate)
        .def_readonly("achieved_outage", &OutageSolveResult::achieved_outage)
        .def_readonly("method", &OutageSolveResult::method)
        .def_readonly("iterations", &OutageSolveResult::iterations);

    m.def("outage_probability", &outage_probability, py::arg("rate"), py::arg("cfg"));
    m.def("outage_probability_quadrature", &outage_probability_quadrature,
          py::arg("rate"), py::arg("cfg"), py::arg("abs_tol") = 1e-11);
    m.def("secrecy_outage_capacity", &secrecy_outage_capacity, py::arg("cfg"));
    m.def("sum_secrecy_outage_capacity", &sum_secrecy_outage_capacity, py::arg("cfg"));
    m.def("interception_probability", &interception_probability, py::arg("cfg"));

    m.def("outage_noise_limited", &outage_noise_limited, py::arg("rate"), py::arg("cfg"));
    m.def("interception_noise_limited", &interception_noise_limited, py::arg("cfg"));
    m.def("outage_interference_limited", &outage_interference_limited,
          py::arg("sum_rate"), py::arg("cfg"));
    m.def("interception_interference_limited", &interception_interference_limited,
          py::arg("n_users"));
    m.def("outage_large_k", &outage_large_k, py::arg("rate"), py::arg("cfg"));
    m.def("interception_large_k", &interception_large_k, py::arg("cfg"));
    m.def("capacity_noise_limited", &capacity_noise_limited, py::arg("cfg"));
    m.def("sum_capacity_interference_limited", &sum_capacity_interference_limited,
          py::arg("cfg"));
    m.def("capacity_large_k", &capacity_large_k, py::arg("cfg"));
    m.def("asymptotic_mode", &asymptotic_mode, py::arg("regime"), py::arg("cfg"));
    m.def("detect_regime", &detect_regime, py::arg("cfg"));

    py::enum_<ReducedQuantity>(m, "ReducedQuantity")
        .value("legit_cdf", ReducedQuantity::legit_cdf)
        .value("eav_pdf", ReducedQuantity::eav_pdf);
    m.def("regime_reductions", &regime_reductions, py::arg("x_or_y"), py::arg("cfg"),
          py::arg("regime"), py::arg("which"));

    py::enum_<Scheme>(m, "Scheme")
        .value("AMS", Scheme::AMS)
        .value("FTM1", Scheme::FTM1)
        .value("FTM2", Scheme::FTM2);

    py::enum_<SelectStrategy>(m, "SelectStrategy")
        .value("grid_scan", SelectStrategy::grid_scan)
        .value("bisection", SelectStrategy::bisection);

    py::class_<ModeDecision>(m, "ModeDecision")
        .def_readonly("per_mode_sum_capacity", &ModeDecision::per_mode_sum_capacity)
        .def_readonly("per_mode_error", &ModeDecision::per_mode_error)
        .def_readonly("chosen", &ModeDecision::chosen)
        .def_readonly("scheme", &ModeDecision::scheme)
        .def_readonly("near_tie_margin", &ModeDecision::near_tie_margin)
        .def_readonly("runner_up", &ModeDecision::runner_up);

    m.def("ams_select", &ams_select, py::arg("cfg"),
          py::arg("strategy") = SelectStrategy::bisection, py::arg("delta_r") = 0.01);
    m.def("fixed_mode", &fixed_mode, py::arg("cfg"), py::arg("scheme"),
          py::arg("strategy") = SelectStrategy::bisection, py::arg("delta_r") = 0.01);

    py::class_<TrialStats>(m, "TrialStats")
        .def_readonly("trials", &TrialStats::trials)
        .def_readonly("pair_count", &TrialStats::pair_count)
        .def_readonly("rate_grid", &TrialStats::rate_grid)
        .def_readonly("empirical_outage", &TrialStats::empirical_outage)
        .def_readonly("outage_std_err", &TrialStats::outage_std_err)
        .def_readonly("empirical_interception", &TrialStats::empirical_interception)
        .def_readonly("interception_std_err", &TrialStats::interception_std_err)
        .def_readonly("mean_sum_secrecy", &TrialStats::mean_sum_secrecy)
        .def_readonly("sum_secrecy_std_err", &TrialStats::sum_secrecy_std_err)
        .def_readonly("starved_beams", &TrialStats::starved_beams)
        .def_readonly("duplicate_assignments", &TrialStats::duplicate_assignments)
        .def("secrecy_quantile", &TrialStats::secrecy_quantile, py::arg("q"));

    m.def("run_trials", &run_trials_wrapper, py::arg("cfg"), py::arg("trials"),
          py::arg("rates") = std::vector<double>{}, py::arg("seed") = 0,
          py::arg("strict_scheduling") = false, py::arg("workers") = 0,
          py::arg("collect_secrecy_samples") = false);
}
