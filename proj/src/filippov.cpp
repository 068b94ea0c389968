#include "sisdg/filippov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sisdg {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_phi0(double phi0, const GameParams& params) {
    if (!(phi0 > 0.0) || phi0 > params.i0)
        throw std::invalid_argument("filippov: phi0 must lie in (0, i0]");
}

}  // namespace

double shadow_value(const PotentialState& state) {
    if (!(state.i > 0.0)) throw std::invalid_argument("shadow_value: i must be positive");
    return state.phi / state.i - 1.0;
}

ControlSet control_rule(double phi, double m) {
    if (!(phi >= 0.0)) throw std::invalid_argument("control_rule: phi must be nonnegative");
    const double line = 1.0 / m;
    if (phi < line) return {0.0, 0.0};
    if (phi > line) return {line, line};
    return {0.0, line};
}

PotentialState flow_free(const PotentialState& state, double dt, double m) {
    if (!(dt >= 0.0)) throw std::invalid_argument("flow_free: dt must be nonnegative");
    const double phi_end = state.phi * std::exp(dt);
    const double line = 1.0 / m;
    if (state.phi < line && phi_end > line * (1.0 + 1e-9))
        throw std::logic_error("flow_free: crosses phi = 1/m inside dt; split at switch_time");
    return {state.t + dt, prevalence_at(dt, state.i), phi_end};
}

PotentialState flow_locked(const PotentialState& state, double dt, double m) {
    if (!(dt >= 0.0)) throw std::invalid_argument("flow_locked: dt must be nonnegative");
    return {state.t + dt, state.i, state.phi + state.i / m * dt};
}

double switch_time(double phi0, double m) {
    if (!(phi0 > 0.0)) throw std::invalid_argument("switch_time: phi0 must be positive");
    if (phi0 > 1.0 / m)
        throw std::invalid_argument("switch_time: phi0 above 1/m is already locked");
    return std::max(0.0, -std::log(m * phi0));
}

const char* to_string(TrajectoryRegime regime) {
    switch (regime) {
        case TrajectoryRegime::SinglePhaseFree: return "single_phase_free";
        case TrajectoryRegime::SinglePhaseLocked: return "single_phase_locked";
        case TrajectoryRegime::TwoPhase: return "two_phase";
    }
    return "unknown";
}

double single_phase_free_duration(double phi0, const GameParams& params) {
    check_phi0(phi0, params);
    return std::log(1.0 / phi0 - (1.0 - params.i0) / params.i0);
}

double single_phase_locked_duration(double phi0, const GameParams& params) {
    check_phi0(phi0, params);
    return params.m * (params.i0 - phi0) / params.i0;
}

double two_phase_duration(double phi0, const GameParams& params) {
    check_phi0(phi0, params);
    return params.m - std::log(params.m * phi0) -
           (params.m * (1.0 - params.i0) * phi0 + params.i0) / params.i0;
}

DurationResult tf_of_phi0(double phi0, const GameParams& params) {
    check_phi0(phi0, params);
    const double line = 1.0 / params.m;
    if (phi0 >= line)
        return {single_phase_locked_duration(phi0, params), TrajectoryRegime::SinglePhaseLocked};
    const double terminal = single_phase_free_duration(phi0, params);
    const double tau = -std::log(params.m * phi0);
    if (terminal <= tau)
        return {terminal, TrajectoryRegime::SinglePhaseFree};
    return {two_phase_duration(phi0, params), TrajectoryRegime::TwoPhase};
}

double phi0_of_tf(const GameParams& params) {
    const double m = params.m, i0 = params.i0, tf = params.tf;
    const double line = 1.0 / m;
    if (i0 >= line && tf <= m - 1.0 / i0)
        return i0 * (1.0 - tf / m);  // locked branch, linear
    const double terminal_i = prevalence_at(tf, i0);
    if (terminal_i <= line)
        return terminal_i * std::exp(-tf);  // free branch, analytic inversion

    // Two-phase branch: the duration is strictly decreasing in phi0, so
    // bisect in log(phi0). The lower endpoint reaches at least tf + 1.
    double lo = -(tf + 1.0) + std::log(std::min(i0, line));
    double hi = std::log(std::min(i0, line));
    for (int iter = 0; iter < 200 && hi - lo > 4e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (two_phase_duration(std::exp(mid), params) > tf ? lo : hi) = mid;
    }
    const double phi0 = std::exp(0.5 * (lo + hi));
    // the duration's conditioning caps what any double phi0 can deliver:
    // |d tf / d ln phi0| <= 1 + min(m, 1/i0), plus ~eps*m from the formula
    const double resolution = std::max(
        1e-11, 8.0 * std::numeric_limits<double>::epsilon() *
                   (1.0 + m + std::min(m, 1.0 / i0)));
    if (std::abs(tf_of_phi0(phi0, params).tf - tf) > resolution)
        throw std::logic_error("phi0_of_tf: bisection failed to converge");
    return phi0;
}

double EquilibriumTrajectory::control_at(double t) const {
    if (segments.empty() || t < 0.0 || t > tf)
        throw std::invalid_argument("control_at: t outside [0, tf]");
    for (const auto& seg : segments) {
        if (t < seg.start.t + seg.duration) return seg.control;
    }
    return segments.back().control;
}

PotentialState EquilibriumTrajectory::state_at(double t) const {
    if (segments.empty() || t < 0.0 || t > tf)
        throw std::invalid_argument("state_at: t outside [0, tf]");
    const TrajectorySegment* seg = &segments.back();
    for (const auto& candidate : segments) {
        if (t < candidate.start.t + candidate.duration) {
            seg = &candidate;
            break;
        }
    }
    const double dt = t - seg->start.t;
    if (seg->control == 0.0)
        return {t, prevalence_at(dt, seg->start.i), seg->start.phi * std::exp(dt)};
    return {t, seg->start.i, seg->start.phi + seg->start.i * seg->control * dt};
}

EquilibriumTrajectory equilibrium_trajectory(const GameParams& params) {
    const double m = params.m, i0 = params.i0, tf = params.tf;
    const double phi0 = phi0_of_tf(params);

    EquilibriumTrajectory traj;
    traj.tf = tf;
    traj.phi0 = phi0;
    traj.v0 = phi0 / i0 - 1.0;
    traj.disutility = -traj.v0;

    const PotentialState start{0.0, i0, phi0};
    const double line = 1.0 / m;
    if (phi0 >= line) {
        traj.tau = 0.0;
        traj.segments.push_back({start, line, tf});
        return traj;
    }
    const double tau = switch_time(phi0, m);
    if (tau >= tf) {
        traj.segments.push_back({start, 0.0, tf});
        return traj;
    }
    traj.tau = tau;
    traj.segments.push_back({start, 0.0, tau});
    traj.segments.push_back({flow_free(start, tau, m), line, tf - tau});
    return traj;
}

MonotonicityReport duration_monotonicity_suite(const GameParams& params, std::size_t grid_size) {
    if (grid_size < 3)
        throw std::invalid_argument("duration_monotonicity_suite: grid_size must be >= 3");
    const double m = params.m, i0 = params.i0;
    const double line = 1.0 / m;

    MonotonicityReport report{0, 0, 0.0, kNan, kNan};

    // Free phase: min(t*, tau) strictly decreasing in phi0 on (0, min(i0, 1/m)).
    const double cap = std::min(i0, line);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= grid_size; ++k) {
        const double phi0 = cap * static_cast<double>(k) / static_cast<double>(grid_size + 1);
        const double value = std::min(single_phase_free_duration(phi0, params),
                                      -std::log(m * phi0));
        if (value >= previous) ++report.free_violations;
        previous = value;
    }

    // Locked phase: duration decreasing on [1/m, i0] when that interval exists.
    if (i0 >= line) {
        previous = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < grid_size; ++k) {
            const double phi0 =
                line + (i0 - line) * static_cast<double>(k) / static_cast<double>(grid_size - 1);
            const double value = single_phase_locked_duration(phi0, params);
            if (value >= previous && i0 > line) ++report.locked_violations;
            previous = value;
        }
    }

    // d tf / d tau = 1 + ((1 - i0)/i0) e^{-tau} against central differences of
    // the composed two-phase duration.
    const auto duration_of_tau = [&](double tau) {
        const double infected = prevalence_at(tau, i0);
        return tau + m - 1.0 / infected;
    };
    const double tau_lo = std::max(0.0, -std::log(m * i0));
    const double h = 1e-5;
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double tau = tau_lo + 5.0 * static_cast<double>(k) / static_cast<double>(grid_size - 1);
        const double analytic = 1.0 + (1.0 - i0) / i0 * std::exp(-tau);
        const double numeric = (duration_of_tau(tau + h) - duration_of_tau(tau - h)) / (2.0 * h);
        report.max_switch_derivative_error =
            std::max(report.max_switch_derivative_error, std::abs(analytic - numeric));
    }

    // Boundary agreement of the closed forms.
    if (m > 1.0 && i0 <= line) {
        // free/two-phase: the free trajectory ends exactly on the line, at
        // the time where I = 1/m
        const double t_boundary = std::log((1.0 - i0) / (i0 * (m - 1.0)));
        const double phi0 = std::exp(-t_boundary) / m;
        if (phi0 > 0.0 && phi0 <= i0)
            report.free_two_phase_boundary_gap =
                std::abs(single_phase_free_duration(phi0, params) -
                         two_phase_duration(phi0, params));
    }
    if (i0 >= line) {
        report.locked_two_phase_boundary_gap =
            std::abs(single_phase_locked_duration(line, params) -
                     two_phase_duration(line, params));
    }
    return report;
}

}  // namespace sisdg
