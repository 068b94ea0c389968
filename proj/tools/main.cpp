// Command-line front end: equilibrium/surface/sweep/filippov/verify.
// Grids go out as CSV, scalar reports as JSON, every float at 17 significant
// digits so identical inputs give byte-identical output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sisdg/delay_game.hpp"
#include "sisdg/filippov.hpp"
#include "sisdg/model.hpp"
#include "sisdg/oracle.hpp"
#include "sisdg/scenario.hpp"

namespace {

std::string fmt17(double v) {
    if (!std::isfinite(v)) return "null";  // JSON has no inf/nan
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_str(const std::string& s) { return "\"" + s + "\""; }

struct ParamOptions {
    double m = 6.0;
    double i0 = 0.02;
    double tf = 6.0;
    std::string scenario_path;

    sisdg::GameParams resolve() const {
        if (!scenario_path.empty())
            return sisdg::nondimensionalize(sisdg::load_scenario(scenario_path));
        return sisdg::GameParams(m, i0, tf);
    }
};

void add_param_options(CLI::App* cmd, ParamOptions& opts) {
    cmd->add_option("--m", opts.m, "Distancing efficiency m");
    cmd->add_option("--i0", opts.i0, "Initial infected fraction");
    cmd->add_option("--tf", opts.tf, "Game duration");
    cmd->add_option("--scenario", opts.scenario_path,
                    "JSON scenario file; overrides --m/--i0/--tf");
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<double> linspace(double lo, double hi, std::size_t n, bool log_scale) {
    std::vector<double> grid;
    grid.reserve(n);
    if (n == 1) {
        grid.push_back(lo);
        return grid;
    }
    if (log_scale) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (std::size_t k = 0; k + 1 < n; ++k)
            grid.push_back(std::exp(llo + (lhi - llo) * (static_cast<double>(k) /
                                                         static_cast<double>(n - 1))));
    } else {
        for (std::size_t k = 0; k + 1 < n; ++k)
            grid.push_back(lo + (hi - lo) * (static_cast<double>(k) /
                                             static_cast<double>(n - 1)));
    }
    grid.push_back(hi);  // exact endpoint, no roundoff overshoot
    return grid;
}

void run_equilibrium(const sisdg::GameParams& params, std::ostream& out) {
    const sisdg::EquilibriumResult eq = sisdg::nash_equilibrium(params);
    out << "{"
        << json_str("m") << ": " << fmt17(params.m) << ", "
        << json_str("i0") << ": " << fmt17(params.i0) << ", "
        << json_str("tf") << ": " << fmt17(params.tf) << ", "
        << json_str("x_star") << ": " << fmt17(eq.x_star) << ", "
        << json_str("regime") << ": " << json_str(sisdg::to_string(eq.regime)) << ", "
        << json_str("residual") << ": " << fmt17(eq.residual) << "}\n";
}

void run_surface(const sisdg::GameParams& params, std::size_t grid, std::ostream& out) {
    out << "x,xbar,disutility,relative_disutility,emblematic\n";
    const std::vector<double> axis = linspace(0.0, params.tf, grid, false);
    for (const double x : axis) {
        for (const double xbar : axis) {
            const double d = sisdg::restricted_disutility({x, xbar}, params);
            const double e = sisdg::emblematic_disutility(xbar, params);
            out << fmt17(x) << "," << fmt17(xbar) << "," << fmt17(d) << ","
                << fmt17(d / e) << "," << fmt17(e) << "\n";
        }
    }
}

struct SweepOptions {
    std::string vary = "i0";
    double vary_min = 1e-4;
    double vary_max = 0.5;
    std::size_t vary_steps = 25;
    bool vary_log = false;
    double tf_min = 0.25;
    double tf_max = 12.0;
    std::size_t tf_steps = 25;
    double fixed_m = 6.0;
    double fixed_i0 = 1e-3;
};

void run_sweep(const SweepOptions& opts, std::ostream& out) {
    out << "tf,i0,m,regime,x_star,burden_eq,burden_indifferent,improvement,"
           "improvement_rel,degenerate\n";
    const std::vector<double> vary_grid =
        linspace(opts.vary_min, opts.vary_max, opts.vary_steps, opts.vary_log);
    const std::vector<double> tf_grid = linspace(opts.tf_min, opts.tf_max, opts.tf_steps, false);
    for (const double v : vary_grid) {
        for (const double tf : tf_grid) {
            const double m = opts.vary == "m" ? v : opts.fixed_m;
            const double i0 = opts.vary == "i0" ? v : opts.fixed_i0;
            const sisdg::GameParams params(m, i0, tf);
            const sisdg::EquilibriumResult eq = sisdg::nash_equilibrium(params);
            const sisdg::BurdenReport rep = sisdg::improvement_over_indifference(params);
            out << fmt17(tf) << "," << fmt17(i0) << "," << fmt17(m) << ","
                << sisdg::to_string(eq.regime) << "," << fmt17(eq.x_star) << ","
                << fmt17(rep.burden) << "," << fmt17(rep.burden_indifferent) << ","
                << fmt17(rep.improvement) << ","
                << fmt17(rep.improvement / rep.burden_indifferent) << ","
                << (params.constant_risk() ? "1" : "0") << "\n";
        }
    }
}

void run_filippov(const sisdg::GameParams& params, std::ostream& out) {
    const sisdg::EquilibriumTrajectory traj = sisdg::equilibrium_trajectory(params);
    out << "{" << json_str("phi0") << ": " << fmt17(traj.phi0) << ", "
        << json_str("v0") << ": " << fmt17(traj.v0) << ", "
        << json_str("disutility") << ": " << fmt17(traj.disutility) << ", "
        << json_str("tau") << ": " << (traj.tau ? fmt17(*traj.tau) : "null") << ", "
        << json_str("tf") << ": " << fmt17(traj.tf) << ", "
        << json_str("segments") << ": [";
    for (std::size_t k = 0; k < traj.segments.size(); ++k) {
        const auto& seg = traj.segments[k];
        out << (k ? ", " : "") << "{" << json_str("t") << ": " << fmt17(seg.start.t) << ", "
            << json_str("i") << ": " << fmt17(seg.start.i) << ", "
            << json_str("phi") << ": " << fmt17(seg.start.phi) << ", "
            << json_str("control") << ": " << fmt17(seg.control) << ", "
            << json_str("duration") << ": " << fmt17(seg.duration) << "}";
    }
    const sisdg::PotentialState end = traj.terminal_state();
    out << "], " << json_str("terminal") << ": {" << json_str("t") << ": " << fmt17(end.t)
        << ", " << json_str("i") << ": " << fmt17(end.i) << ", " << json_str("phi") << ": "
        << fmt17(end.phi) << "}}\n";
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

int run_verify(const sisdg::GameParams& params, const std::string& level,
               std::size_t grid_override, std::ostream& out) {
    const bool full = level == "full";
    const std::size_t ess_grid = grid_override ? grid_override : (full ? 10001 : 2001);
    const std::size_t lemma_grid = full ? 1001 : 501;
    const std::size_t intervals = full ? 24 : 12;

    std::vector<Check> checks;

    const sisdg::EssReport ess = sisdg::ess_check(params, ess_grid);
    {
        const double cell = params.tf / static_cast<double>(ess_grid - 1);
        // accept a numerically tied argmin: the grid cannot place the minimum
        // more finely than the float resolution of E
        const bool argmin_ok =
            std::abs(ess.emblematic_argmin - ess.x_star) <= cell * (1.0 + 1e-9) ||
            ess.emblematic_gap_at_star <= 1e-15;
        // a violation must exceed the slack evaluation noise to count
        bool pass = ess.min_nash_slack > -1e-14 && argmin_ok;
        if (ess.interior_equilibrium) pass = pass && ess.min_invasion_slack > -1e-14;
        checks.push_back({"ess_check", pass,
                          "min_nash_slack=" + fmt17(ess.min_nash_slack) +
                              " min_invasion_slack=" + fmt17(ess.min_invasion_slack)});
    }

    const sisdg::MonotonicityReport mono = sisdg::duration_monotonicity_suite(params, lemma_grid);
    {
        bool pass = mono.free_violations == 0 && mono.locked_violations == 0 &&
                    mono.max_switch_derivative_error <= 1e-6;
        if (!std::isnan(mono.free_two_phase_boundary_gap))
            pass = pass && mono.free_two_phase_boundary_gap <= 1e-10;
        if (!std::isnan(mono.locked_two_phase_boundary_gap))
            pass = pass && mono.locked_two_phase_boundary_gap <= 1e-10;
        checks.push_back(
            {"duration_monotonicity_suite", pass,
             "violations=" + std::to_string(mono.free_violations + mono.locked_violations) +
                 " max_derivative_error=" + fmt17(mono.max_switch_derivative_error)});
    }

    {
        const double residual = sisdg::nash_residual(params, intervals);
        const bool pass = residual >= -1e-6 && residual <= 2.0 / static_cast<double>(intervals);
        checks.push_back({"nash_residual", pass, "residual=" + fmt17(residual)});
    }

    if (!params.constant_risk() && params.tf >= 0.01) {
        // the finite-difference step needs headroom inside [0, tf]
        const double fractions[][2] = {{0.2, 0.7}, {0.7, 0.2}, {0.45, 0.45},
                                       {0.9, 0.35}, {0.35, 0.9}, {0.6, 0.6}};
        double worst = 0.0;
        for (const auto& f : fractions) {
            const sisdg::DelayPair pair{f[0] * params.tf, f[1] * params.tf};
            worst = std::max(worst, sisdg::derivative_check(pair, params));
        }
        checks.push_back({"derivative_check", worst <= 1e-6, "max_error=" + fmt17(worst)});
    } else {
        checks.push_back({"derivative_check", true,
                          params.constant_risk() ? "skipped: constant-risk game"
                                                 : "skipped: game too short"});
    }

    bool all_pass = true;
    out << "{" << json_str("m") << ": " << fmt17(params.m) << ", " << json_str("i0") << ": "
        << fmt17(params.i0) << ", " << json_str("tf") << ": " << fmt17(params.tf) << ", "
        << json_str("checks") << ": [";
    for (std::size_t k = 0; k < checks.size(); ++k) {
        all_pass = all_pass && checks[k].pass;
        out << (k ? ", " : "") << "{" << json_str("name") << ": " << json_str(checks[k].name)
            << ", " << json_str("pass") << ": " << (checks[k].pass ? "true" : "false") << ", "
            << json_str("detail") << ": " << json_str(checks[k].detail) << "}";
    }
    out << "], " << json_str("pass") << ": " << (all_pass ? "true" : "false") << "}\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibria of the finite-horizon SI social-distancing game"};
    app.require_subcommand(1);
    int exit_code = 0;

    ParamOptions eq_params;
    std::string eq_out;
    auto* eq_cmd = app.add_subcommand("equilibrium", "Equilibrium delay x* as JSON");
    add_param_options(eq_cmd, eq_params);
    eq_cmd->add_option("--out", eq_out, "Write to file instead of stdout");
    eq_cmd->callback([&] {
        Output sink(eq_out);
        run_equilibrium(eq_params.resolve(), sink.stream());
    });

    ParamOptions surf_params;
    std::string surf_out;
    std::size_t surf_grid = 101;
    auto* surf_cmd =
        app.add_subcommand("surface", "CSV of D(x, xbar), D/E, and E over an (x, xbar) grid");
    add_param_options(surf_cmd, surf_params);
    surf_cmd->add_option("--grid", surf_grid, "Points per axis")->check(CLI::Range(2, 100000));
    surf_cmd->add_option("--out", surf_out, "Write to file instead of stdout");
    surf_cmd->callback([&] {
        Output sink(surf_out);
        run_surface(surf_params.resolve(), surf_grid, sink.stream());
    });

    SweepOptions sweep_opts;
    std::string sweep_out;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "CSV of x*, burden, and improvement over parameter grids");
    sweep_cmd->add_option("--vary", sweep_opts.vary, "Second axis: i0 or m")
        ->check(CLI::IsMember({"i0", "m"}));
    sweep_cmd->add_option("--vary-min", sweep_opts.vary_min, "Second-axis lower bound");
    sweep_cmd->add_option("--vary-max", sweep_opts.vary_max, "Second-axis upper bound");
    sweep_cmd->add_option("--vary-steps", sweep_opts.vary_steps, "Second-axis step count")
        ->check(CLI::Range(1, 100000));
    sweep_cmd->add_flag("--vary-log", sweep_opts.vary_log, "Log-space the second axis");
    sweep_cmd->add_option("--tf-min", sweep_opts.tf_min, "Duration lower bound");
    sweep_cmd->add_option("--tf-max", sweep_opts.tf_max, "Duration upper bound");
    sweep_cmd->add_option("--tf-steps", sweep_opts.tf_steps, "Duration step count")
        ->check(CLI::Range(1, 100000));
    sweep_cmd->add_option("--m", sweep_opts.fixed_m, "Fixed m when varying i0");
    sweep_cmd->add_option("--i0", sweep_opts.fixed_i0, "Fixed i0 when varying m");
    sweep_cmd->add_option("--out", sweep_out, "Write to file instead of stdout");
    sweep_cmd->callback([&] {
        Output sink(sweep_out);
        run_sweep(sweep_opts, sink.stream());
    });

    ParamOptions fil_params;
    std::string fil_out;
    auto* fil_cmd = app.add_subcommand("filippov", "Equilibrium trajectory in (I, Phi) as JSON");
    add_param_options(fil_cmd, fil_params);
    fil_cmd->add_option("--out", fil_out, "Write to file instead of stdout");
    fil_cmd->callback([&] {
        Output sink(fil_out);
        run_filippov(fil_params.resolve(), sink.stream());
    });

    ParamOptions verify_params;
    std::string verify_out;
    std::string verify_level = "quick";
    std::size_t verify_grid = 0;
    auto* verify_cmd =
        app.add_subcommand("verify", "Run the consistency checks; exit 1 on violation");
    add_param_options(verify_cmd, verify_params);
    verify_cmd->add_option("--level", verify_level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify_cmd->add_option("--grid", verify_grid, "Override the stability grid size");
    verify_cmd->add_option("--out", verify_out, "Write to file instead of stdout");
    verify_cmd->callback([&] {
        Output sink(verify_out);
        exit_code = run_verify(verify_params.resolve(), verify_level, verify_grid, sink.stream());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
