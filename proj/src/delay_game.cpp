#include "sisdg/delay_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sisdg/lambert.hpp"

namespace sisdg {
namespace {

void validate_pair(const DelayPair& pair, const GameParams& params) {
    if (!(pair.x >= 0.0 && pair.x <= params.tf))
        throw std::invalid_argument("delay_game: x must lie in [0, tf]");
    if (!(pair.xbar >= 0.0 && pair.xbar <= params.tf))
        throw std::invalid_argument("delay_game: xbar must lie in [0, tf]");
}

double interior_residual(double x, const GameParams& params) {
    if (params.constant_risk()) return 0.0;
    return std::exp(x) -
           std::exp(params.tf) * (params.i0 / (1.0 - params.i0)) * (params.m - 1.0 - x);
}

// Same root as the transcendental e^x = e^tf (i0/(1-i0)) (m-1-x), rescaled
// by (1-i0) e^{-tf} > 0 so no factor can overflow. Strictly increasing in x.
double scaled_transcendental(double x, const GameParams& params) {
    return (1.0 - params.i0) * std::exp(x - params.tf) -
           params.i0 * (params.m - 1.0 - x);
}

// I(u + delta) - I(u) without cancellation, any sign of delta.
double prevalence_step(double u, double delta, double i0) {
    const double den_u = i0 + (1.0 - i0) * std::exp(-u);
    const double den_v = i0 + (1.0 - i0) * std::exp(-u - delta);
    return -i0 * (1.0 - i0) * std::exp(-u) * std::expm1(-delta) / (den_u * den_v);
}

// Shared closed form of D(y, .) - D(xs, .) when both survival factors carry
// no exponential damping: (1 - I*) d/m - (I* - I(tf-y)) (1 - y/m), d = y - xs.
// Written so the roundoff scales with |d| rather than with 1.
double diagonal_difference(double y, double xs, const GameParams& params) {
    const double a = params.tf - xs;
    const double d = y - xs;
    const double i_star = prevalence_at(a, params.i0);
    const double delta_i = -prevalence_step(a, -d, params.i0);  // I* - I(tf - y)
    return ((1.0 - i_star) * d / params.m - delta_i * (1.0 - y / params.m)) /
           (1.0 - params.i0);
}

// D(y, xs) - D(xs, xs): the slack of the best-reply inequality at grid point y.
double nash_slack(double y, double xs, const GameParams& params) {
    const double m = params.m, tf = params.tf;
    const double d = y - xs;
    if (params.constant_risk())
        return std::exp(xs - tf) *
               (-(1.0 - xs / m) * std::expm1(d) + std::exp(d) * d / m);
    if (y < xs) {
        const double i_star = prevalence_at(tf - xs, params.i0);
        const double damp = std::exp(i_star * d);  // d < 0
        return (1.0 - i_star) / (1.0 - params.i0) *
               (-(1.0 - xs / m) * std::expm1(i_star * d) + damp * d / m);
    }
    return diagonal_difference(y, xs, params);
}

// D(y, y) - D(xs, y): the slack of the invasion inequality at grid point y.
double invasion_slack(double y, double xs, const GameParams& params) {
    const double m = params.m, tf = params.tf;
    const double d = y - xs;
    if (params.constant_risk()) return nash_slack(y, xs, params);
    if (y > xs) {
        const double i_y = prevalence_at(tf - y, params.i0);
        const double damp = std::exp(-i_y * d);
        return (1.0 - i_y) / (1.0 - params.i0) *
               ((1.0 - y / m) * std::expm1(-i_y * d) + damp * d / m);
    }
    return diagonal_difference(y, xs, params);
}

}  // namespace

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::Never: return "never";
        case Regime::Interior: return "interior";
        case Regime::Always: return "always";
    }
    return "unknown";
}

Regime classify_regime(const GameParams& params) {
    if (params.m <= 1.0) return Regime::Never;
    if (params.i0 * (1.0 + (params.m - 1.0) * std::exp(params.tf)) < 1.0)
        return Regime::Never;
    if (params.i0 * (params.m - params.tf) > 1.0) return Regime::Always;
    return Regime::Interior;
}

double restricted_disutility(const DelayPair& pair, const GameParams& params) {
    validate_pair(pair, params);
    if (params.constant_risk())
        return 1.0 - std::exp(pair.x - params.tf) * (1.0 - pair.x / params.m);
    return 1.0 - survival_probability(pair.x, pair.xbar, params) * (1.0 - pair.x / params.m);
}

double emblematic_disutility(double xbar, const GameParams& params) {
    if (params.constant_risk()) return restricted_disutility({xbar, xbar}, params);
    if (!(xbar >= 0.0 && xbar <= params.tf))
        throw std::invalid_argument("emblematic_disutility: xbar must lie in [0, tf]");
    return 1.0 - (1.0 - xbar / params.m) /
                     (1.0 - params.i0 + params.i0 * std::exp(params.tf - xbar));
}

double relative_disutility(const DelayPair& pair, const GameParams& params) {
    return restricted_disutility(pair, params) / emblematic_disutility(pair.xbar, params);
}

EquilibriumResult nash_equilibrium(const GameParams& params) {
    const Regime regime = classify_regime(params);
    if (regime == Regime::Never) return {0.0, regime, 0.0};
    if (regime == Regime::Always) return {params.tf, regime, 0.0};
    double w;
    if (params.constant_risk()) {
        w = 0.0;  // the W argument (1/i0 - 1) e^{m-1-tf} vanishes exactly
    } else {
        const double exponent =
            std::log(1.0 / params.i0 - 1.0) + params.m - 1.0 - params.tf;
        w = exponent > 700.0
                ? lambert_w0_log(exponent)
                : lambert_w0((1.0 / params.i0 - 1.0) *
                             std::exp(params.m - 1.0 - params.tf));
    }
    const double x = std::clamp(params.m - 1.0 - w, 0.0, params.tf);
    return {x, regime, interior_residual(x, params)};
}

EquilibriumResult nash_equilibrium_bisection(const GameParams& params) {
    if (classify_regime(params) != Regime::Interior)
        throw std::logic_error("nash_equilibrium_bisection: interior regime required");

    double lo = 0.0;
    double hi = std::min(params.tf, params.m - 1.0);
    const double f_lo = scaled_transcendental(lo, params);
    const double f_hi = scaled_transcendental(hi, params);
    double x;
    if (f_lo >= 0.0) {
        x = lo;  // regime-boundary tie
    } else if (f_hi <= 0.0) {
        x = hi;
    } else {
        for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (scaled_transcendental(mid, params) < 0.0 ? lo : hi) = mid;
        }
        x = 0.5 * (lo + hi);
    }
    return {x, Regime::Interior, interior_residual(x, params)};
}

double asymptotic_equilibrium(const GameParams& params, AsymptoticRegime which) {
    if (params.m <= 1.0)
        throw std::invalid_argument("asymptotic_equilibrium: requires m > 1");
    if (which == AsymptoticRegime::LongGame)
        return params.m - 1.0 -
               (1.0 / params.i0 - 1.0) * std::exp(params.m - 1.0 - params.tf);
    if (params.constant_risk())
        throw std::invalid_argument("asymptotic_equilibrium: short-game form requires i0 < 1");
    const double bracket =
        params.tf - std::log(1.0 / params.i0 - 1.0) + std::log(params.m - 1.0);
    return (1.0 - 1.0 / params.m) * std::max(0.0, bracket);
}

double burden(double xbar, const GameParams& params) {
    if (!(xbar >= 0.0 && xbar <= params.tf))
        throw std::invalid_argument("burden: xbar must lie in [0, tf]");
    const double infected = prevalence_at(params.tf - xbar, params.i0);
    return infected + (xbar / params.m) * (1.0 - infected);
}

BurdenReport improvement_over_indifference(const GameParams& params) {
    const EquilibriumResult eq = nash_equilibrium(params);
    const double indifferent = burden(0.0, params);
    const double equilibrium = burden(eq.x_star, params);
    return {equilibrium, indifferent, indifferent - equilibrium};
}

double peak_duration(double m, double i0) {
    if (!(m > 1.0)) throw std::invalid_argument("peak_duration: requires m > 1");
    if (!(i0 > 0.0 && i0 < 1.0))
        throw std::invalid_argument("peak_duration: requires 0 < i0 < 1");
    return std::log((m - 1.0) * (1.0 / i0 - 1.0));
}

EssReport ess_check(const GameParams& params, std::size_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("ess_check: grid_size must be >= 2");
    const EquilibriumResult eq = nash_equilibrium(params);

    EssReport report;
    report.interior_equilibrium = eq.regime == Regime::Interior;
    report.x_star = eq.x_star;
    report.grid_size = grid_size;
    report.min_nash_slack = std::numeric_limits<double>::infinity();
    report.min_invasion_slack = report.interior_equilibrium
                                    ? std::numeric_limits<double>::infinity()
                                    : std::numeric_limits<double>::quiet_NaN();
    report.nash_slack_argmin = std::numeric_limits<double>::quiet_NaN();
    report.invasion_slack_argmin = std::numeric_limits<double>::quiet_NaN();
    report.emblematic_argmin = std::numeric_limits<double>::quiet_NaN();

    double best_emblematic = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double y =
            params.tf * (static_cast<double>(k) / static_cast<double>(grid_size - 1));
        const double e_y = emblematic_disutility(y, params);
        if (e_y < best_emblematic) {
            best_emblematic = e_y;
            report.emblematic_argmin = y;
        }
        if (y == eq.x_star) continue;
        if (const double slack = nash_slack(y, eq.x_star, params);
            slack < report.min_nash_slack) {
            report.min_nash_slack = slack;
            report.nash_slack_argmin = y;
        }
        if (report.interior_equilibrium) {
            if (const double slack = invasion_slack(y, eq.x_star, params);
                slack < report.min_invasion_slack) {
                report.min_invasion_slack = slack;
                report.invasion_slack_argmin = y;
            }
        }
    }
    // how far the value at the grid point closest to x* sits above the grid
    // minimum; zero-within-roundoff means the argmin is only tied, not moved
    const double cell = params.tf / static_cast<double>(grid_size - 1);
    const double snapped =
        params.tf * (std::round(eq.x_star / cell) / static_cast<double>(grid_size - 1));
    report.emblematic_gap_at_star =
        emblematic_disutility(std::min(snapped, params.tf), params) - best_emblematic;
    return report;
}

MinimizerReport auxiliary_minimizer_check(const GameParams& params, std::size_t grid_size) {
    if (grid_size < 2)
        throw std::invalid_argument("auxiliary_minimizer_check: grid_size must be >= 2");
    const EquilibriumResult eq = nash_equilibrium(params);
    if (eq.regime != Regime::Interior)
        throw std::logic_error("auxiliary_minimizer_check: interior regime required");

    const double xs = eq.x_star;
    const double c = prevalence_at(params.tf - xs, params.i0);
    const auto exp_objective = [&](double x) {
        return std::exp(c * x) * (x / params.m - 1.0);
    };
    const auto survival_objective = [&](double x) {
        return (1.0 - prevalence_at(params.tf - x, params.i0)) * (x / params.m - 1.0);
    };

    double exp_argmin = 0.0, surv_argmin = 0.0;
    double exp_best = std::numeric_limits<double>::infinity();
    double surv_best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid_size; ++k) {
        const double x =
            params.tf * (static_cast<double>(k) / static_cast<double>(grid_size - 1));
        if (const double v = exp_objective(x); v < exp_best) {
            exp_best = v;
            exp_argmin = x;
        }
        if (const double v = survival_objective(x); v < surv_best) {
            surv_best = v;
            surv_argmin = x;
        }
    }

    const double cell = params.tf / static_cast<double>(grid_size - 1);
    const double h = 1e-4;
    MinimizerReport report;
    report.exp_objective_min_at_star = std::abs(exp_argmin - xs) <= cell * (1.0 + 1e-9);
    report.survival_objective_min_at_star = std::abs(surv_argmin - xs) <= cell * (1.0 + 1e-9);
    report.exp_objective_curvature =
        (exp_objective(xs + h) - 2.0 * exp_objective(xs) + exp_objective(xs - h)) / (h * h);
    report.survival_objective_curvature =
        (survival_objective(xs + h) - 2.0 * survival_objective(xs) + survival_objective(xs - h)) /
        (h * h);
    report.critical_identity_residual = c - 1.0 / (params.m - xs);
    return report;
}

SurvivalPartials survival_partials(const DelayPair& pair, const GameParams& params) {
    if (params.constant_risk())
        throw std::invalid_argument("survival_partials: requires i0 < 1");
    validate_pair(pair, params);
    if (pair.x >= pair.xbar) {
        // x > xbar branch; at equality these are the one-sided limits
        const double infected = prevalence_at(params.tf - pair.x, params.i0);
        return {infected * (1.0 - infected) / (1.0 - params.i0), 0.0};
    }
    const double infected = prevalence_at(params.tf - pair.xbar, params.i0);
    const double gap = pair.xbar - pair.x;
    const double damping = std::exp(-infected * gap);
    const double slope = infected * (1.0 - infected) / (1.0 - params.i0) * damping;
    return {slope, slope * (1.0 - infected) * gap};
}

}  // namespace sisdg
