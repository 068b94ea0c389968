#pragma once

#include <cstddef>

#include "sisdg/model.hpp"

namespace sisdg {

/// A pair of delay strategies: the individual distances for the final x time
/// units of the game, the population for the final xbar.
struct DelayPair {
    double x;
    double xbar;
};

enum class Regime { Never, Interior, Always };

const char* to_string(Regime regime);

/// Which branch of the equilibrium formula applies, without evaluating it.
/// Boundary ties classify as Interior; the closed form is continuous there.
Regime classify_regime(const GameParams& params);

struct EquilibriumResult {
    double x_star;
    Regime regime;
    /// Value of e^x - e^tf (i0/(1-i0)) (m-1-x) at x_star. Meaningful for
    /// interior equilibria with i0 < 1; zero otherwise.
    double residual;
};

struct BurdenReport {
    double burden;              ///< B(x*), per-capita cost at equilibrium
    double burden_indifferent;  ///< B(0), per-capita cost with no distancing
    double improvement;         ///< B(0) - B(x*)
};

struct EssReport {
    bool interior_equilibrium;       ///< interior equilibrium; invasion slack valid
    double x_star;
    double min_nash_slack;      ///< min over grid y != x* of D(y, x*) - D(x*, x*)
    double min_invasion_slack;  ///< min over grid y != x* of D(y, y) - D(x*, y); NaN if not covered
    double nash_slack_argmin;      ///< grid y attaining min_nash_slack
    double invasion_slack_argmin;  ///< grid y attaining min_invasion_slack
    double emblematic_argmin;   ///< grid argmin of E
    double emblematic_gap_at_star;  ///< E(grid point nearest x*) - grid min of E
    std::size_t grid_size;
};

struct MinimizerReport {
    bool exp_objective_min_at_star;       ///< grid argmin of exp(Cx)(x/m - 1) is x*
    bool survival_objective_min_at_star;  ///< grid argmin of (1 - I(tf-x))(x/m - 1) is x*
    double exp_objective_curvature;       ///< second difference at x*, must be positive
    double survival_objective_curvature;
    double critical_identity_residual;    ///< I(tf - x*) - 1/(m - x*)
};

struct SurvivalPartials {
    double dp_dx;
    double dp_dxbar;
};

enum class AsymptoticRegime { LongGame, ShortGame };

/// Expected cost D(x, xbar) of playing delay x against population delay xbar.
double restricted_disutility(const DelayPair& pair, const GameParams& params);

/// E(xbar) = D(xbar, xbar): cost to a typical individual under uniform play.
double emblematic_disutility(double xbar, const GameParams& params);

/// D(x, xbar) / E(xbar): how badly a strategy fares against the crowd.
double relative_disutility(const DelayPair& pair, const GameParams& params);

/// The unique equilibrium delay. Never/Always regimes return the endpoints;
/// interior equilibria come from the Lambert-W closed form.
EquilibriumResult nash_equilibrium(const GameParams& params);

/// Interior equilibrium by bracketing bisection of the transcendental
/// condition, independent of the Lambert-W evaluation. Throws unless the
/// regime is Interior.
EquilibriumResult nash_equilibrium_bisection(const GameParams& params);

/// Asymptotic approximations of x*: the long-game expansion
/// m - 1 - (1/i0 - 1) e^{m-1-tf}, or the short-game line
/// (1 - 1/m) [tf - ln(1/i0 - 1) + ln(m - 1)]^+. Requires m > 1 (and i0 < 1
/// for the short-game form).
double asymptotic_equilibrium(const GameParams& params, AsymptoticRegime which);

/// Per-capita epidemic burden B(xbar) = I(tf-xbar) + (xbar/m)(1 - I(tf-xbar)).
double burden(double xbar, const GameParams& params);

/// Burden at equilibrium vs. burden under indifference, and their gap.
BurdenReport improvement_over_indifference(const GameParams& params);

/// Game duration ln((m-1)(1/i0 - 1)) at which the improvement peaks.
double peak_duration(double m, double i0);

/// Grid check of the two stability inequalities D(x*,x*) < D(y,x*) and
/// D(x*,y) < D(y,y). Reports the smallest slack found rather than applying
/// a threshold; for boundary equilibria only the Nash slack is meaningful.
EssReport ess_check(const GameParams& params, std::size_t grid_size = 10001);

/// Verifies by dense grid that x* minimizes the two auxiliary objectives
/// exp(Cx)(x/m - 1), with C = I(tf - x*), and (1 - I(tf-x))(x/m - 1); their
/// shared minimizer is what pins the equilibrium. Interior regime only.
MinimizerReport auxiliary_minimizer_check(const GameParams& params,
                                          std::size_t grid_size = 10001);

/// Closed-form partial derivatives of survival_probability. At x == xbar the
/// one-sided limits are returned: dp/dx = I(1-I)/(1-i0), dp/dxbar = 0.
SurvivalPartials survival_partials(const DelayPair& pair, const GameParams& params);

}  // namespace sisdg
