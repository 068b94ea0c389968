#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sisdg/delay_game.hpp"
#include "sisdg/filippov.hpp"
#include "sisdg/lambert.hpp"
#include "sisdg/model.hpp"
#include "sisdg/oracle.hpp"
#include "sisdg/scenario.hpp"

namespace py = pybind11;
using namespace sisdg;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form and brute-force equilibria of the SI social-distancing game";

    py::class_<GameParams>(m, "GameParams")
        .def(py::init<double, double, double>(), py::arg("m"), py::arg("i0"), py::arg("tf"))
        .def_readonly("m", &GameParams::m)
        .def_readonly("i0", &GameParams::i0)
        .def_readonly("tf", &GameParams::tf)
        .def("constant_risk", &GameParams::constant_risk)
        .def("__repr__", [](const GameParams& p) {
            std::ostringstream out;
            out << "GameParams(m=" << p.m << ", i0=" << p.i0 << ", tf=" << p.tf << ")";
            return out.str();
        });

    m.def("sigma", &sigma, py::arg("c"), py::arg("m"));
    m.def("prevalence_at", &prevalence_at, py::arg("u"), py::arg("i0"));
    m.def(
        "survival_probability",
        [](double x, double xbar, const GameParams& p) { return survival_probability(x, xbar, p); },
        py::arg("x"), py::arg("xbar"), py::arg("params"));
    m.def("lambert_w0", &lambert_w0, py::arg("z"));

    py::enum_<Regime>(m, "Regime")
        .value("Never", Regime::Never)
        .value("Interior", Regime::Interior)
        .value("Always", Regime::Always);

    py::class_<EquilibriumResult>(m, "EquilibriumResult")
        .def_readonly("x_star", &EquilibriumResult::x_star)
        .def_readonly("regime", &EquilibriumResult::regime)
        .def_readonly("residual", &EquilibriumResult::residual)
        .def("__repr__", [](const EquilibriumResult& r) {
            std::ostringstream out;
            out << "EquilibriumResult(x_star=" << r.x_star << ", regime=" << to_string(r.regime)
                << ")";
            return out.str();
        });

    py::class_<BurdenReport>(m, "BurdenReport")
        .def_readonly("burden", &BurdenReport::burden)
        .def_readonly("burden_indifferent", &BurdenReport::burden_indifferent)
        .def_readonly("improvement", &BurdenReport::improvement);

    py::class_<EssReport>(m, "EssReport")
        .def_readonly("interior_equilibrium", &EssReport::interior_equilibrium)
        .def_readonly("x_star", &EssReport::x_star)
        .def_readonly("min_nash_slack", &EssReport::min_nash_slack)
        .def_readonly("min_invasion_slack", &EssReport::min_invasion_slack)
        .def_readonly("nash_slack_argmin", &EssReport::nash_slack_argmin)
        .def_readonly("invasion_slack_argmin", &EssReport::invasion_slack_argmin)
        .def_readonly("emblematic_argmin", &EssReport::emblematic_argmin)
        .def_readonly("emblematic_gap_at_star", &EssReport::emblematic_gap_at_star)
        .def_readonly("grid_size", &EssReport::grid_size);

    py::class_<MinimizerReport>(m, "MinimizerReport")
        .def_readonly("exp_objective_min_at_star", &MinimizerReport::exp_objective_min_at_star)
        .def_readonly("survival_objective_min_at_star",
                      &MinimizerReport::survival_objective_min_at_star)
        .def_readonly("exp_objective_curvature", &MinimizerReport::exp_objective_curvature)
        .def_readonly("survival_objective_curvature",
                      &MinimizerReport::survival_objective_curvature)
        .def_readonly("critical_identity_residual", &MinimizerReport::critical_identity_residual);

    py::enum_<AsymptoticRegime>(m, "AsymptoticRegime")
        .value("LongGame", AsymptoticRegime::LongGame)
        .value("ShortGame", AsymptoticRegime::ShortGame);

    m.def(
        "restricted_disutility",
        [](double x, double xbar, const GameParams& p) {
            return restricted_disutility({x, xbar}, p);
        },
        py::arg("x"), py::arg("xbar"), py::arg("params"));
    m.def("emblematic_disutility", &emblematic_disutility, py::arg("xbar"), py::arg("params"));
    m.def(
        "relative_disutility",
        [](double x, double xbar, const GameParams& p) { return relative_disutility({x, xbar}, p); },
        py::arg("x"), py::arg("xbar"), py::arg("params"));
    m.def("nash_equilibrium", &nash_equilibrium, py::arg("params"));
    m.def("nash_equilibrium_bisection", &nash_equilibrium_bisection, py::arg("params"));
    m.def("asymptotic_equilibrium", &asymptotic_equilibrium, py::arg("params"), py::arg("which"));
    m.def("burden", &burden, py::arg("xbar"), py::arg("params"));
    m.def("improvement_over_indifference", &improvement_over_indifference, py::arg("params"));
    m.def("peak_duration", &peak_duration, py::arg("m"), py::arg("i0"));
    m.def("ess_check", &ess_check, py::arg("params"), py::arg("grid_size") = 10001);
    m.def("auxiliary_minimizer_check", &auxiliary_minimizer_check, py::arg("params"),
          py::arg("grid_size") = 10001);

    py::class_<PotentialState>(m, "PotentialState")
        .def(py::init([](double t, double i, double phi) {
                 return PotentialState{t, i, phi};
             }),
             py::arg("t"), py::arg("i"), py::arg("phi"))
        .def_readonly("t", &PotentialState::t)
        .def_readonly("i", &PotentialState::i)
        .def_readonly("phi", &PotentialState::phi);

    py::enum_<TrajectoryRegime>(m, "TrajectoryRegime")
        .value("SinglePhaseFree", TrajectoryRegime::SinglePhaseFree)
        .value("SinglePhaseLocked", TrajectoryRegime::SinglePhaseLocked)
        .value("TwoPhase", TrajectoryRegime::TwoPhase);

    py::class_<DurationResult>(m, "DurationResult")
        .def_readonly("tf", &DurationResult::tf)
        .def_readonly("regime", &DurationResult::regime);

    py::class_<TrajectorySegment>(m, "TrajectorySegment")
        .def_readonly("start", &TrajectorySegment::start)
        .def_readonly("control", &TrajectorySegment::control)
        .def_readonly("duration", &TrajectorySegment::duration);

    py::class_<EquilibriumTrajectory>(m, "EquilibriumTrajectory")
        .def_readonly("segments", &EquilibriumTrajectory::segments)
        .def_readonly("tau", &EquilibriumTrajectory::tau)
        .def_readonly("tf", &EquilibriumTrajectory::tf)
        .def_readonly("phi0", &EquilibriumTrajectory::phi0)
        .def_readonly("v0", &EquilibriumTrajectory::v0)
        .def_readonly("disutility", &EquilibriumTrajectory::disutility)
        .def("control_at", &EquilibriumTrajectory::control_at, py::arg("t"))
        .def("state_at", &EquilibriumTrajectory::state_at, py::arg("t"))
        .def("terminal_state", &EquilibriumTrajectory::terminal_state);

    m.def("shadow_value", &shadow_value, py::arg("state"));
    m.def("switch_time", &switch_time, py::arg("phi0"), py::arg("m"));
    m.def("tf_of_phi0", &tf_of_phi0, py::arg("phi0"), py::arg("params"));
    m.def("phi0_of_tf", &phi0_of_tf, py::arg("params"));
    m.def("equilibrium_trajectory", &equilibrium_trajectory, py::arg("params"));

    py::class_<PiecewiseStrategy>(m, "PiecewiseStrategy")
        .def(py::init([](std::vector<double> breakpoints, std::vector<double> values) {
                 return PiecewiseStrategy{std::move(breakpoints), std::move(values)};
             }),
             py::arg("breakpoints"), py::arg("values"))
        .def_static("constant", &PiecewiseStrategy::constant, py::arg("c"))
        .def_static("delay", &PiecewiseStrategy::delay, py::arg("x"), py::arg("params"))
        .def_readonly("breakpoints", &PiecewiseStrategy::breakpoints)
        .def_readonly("values", &PiecewiseStrategy::values)
        .def("value_at", &PiecewiseStrategy::value_at, py::arg("t"));

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("disutility", &SimulationResult::disutility)
        .def_readonly("times", &SimulationResult::times)
        .def_readonly("i_path", &SimulationResult::i_path)
        .def_readonly("p_path", &SimulationResult::p_path)
        .def_readonly("step", &SimulationResult::step);

    m.def("simulate", &simulate, py::arg("c"), py::arg("cbar"), py::arg("params"),
          py::arg("step") = 0.0);
    m.def("best_response_search", &best_response_search, py::arg("cbar"), py::arg("params"),
          py::arg("n_intervals"), py::arg("levels") = 2);
    m.def("nash_residual", &nash_residual, py::arg("params"), py::arg("n_intervals"));
    m.def(
        "derivative_check",
        [](double x, double xbar, const GameParams& p) { return derivative_check({x, xbar}, p); },
        py::arg("x"), py::arg("xbar"), py::arg("params"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init([](double population, double initial_cases, double doubling_time,
                         double infection_cost, double max_weekly_spend, double vaccine_wait) {
                 return ScenarioConfig{population,     initial_cases,    doubling_time,
                                       infection_cost, max_weekly_spend, vaccine_wait};
             }),
             py::arg("population"), py::arg("initial_cases"), py::arg("doubling_time"),
             py::arg("infection_cost"), py::arg("max_weekly_spend"), py::arg("vaccine_wait"))
        .def_readonly("population", &ScenarioConfig::population)
        .def_readonly("initial_cases", &ScenarioConfig::initial_cases)
        .def_readonly("doubling_time", &ScenarioConfig::doubling_time)
        .def_readonly("infection_cost", &ScenarioConfig::infection_cost)
        .def_readonly("max_weekly_spend", &ScenarioConfig::max_weekly_spend)
        .def_readonly("vaccine_wait", &ScenarioConfig::vaccine_wait);

    m.def("nondimensionalize", &nondimensionalize, py::arg("scenario"));
    m.def("load_scenario", &load_scenario, py::arg("path"));

#ifdef SISDG_VERSION
    m.attr("__version__") = SISDG_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
