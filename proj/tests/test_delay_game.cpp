#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sisdg/delay_game.hpp"
#include "sisdg/model.hpp"
#include "testing.hpp"

using namespace sisdg;

namespace {

double improvement_at(double m, double i0, double tf) {
    return improvement_over_indifference(GameParams(m, i0, tf)).improvement;
}

// argmax of the improvement over a dense tf grid
double improvement_peak(double m, double i0, double tf_lo, double tf_hi, int n) {
    double best = -1.0, best_tf = tf_lo;
    for (int k = 0; k <= n; ++k) {
        const double tf = tf_lo + (tf_hi - tf_lo) * k / n;
        const double value = improvement_at(m, i0, tf);
        if (value > best) {
            best = value;
            best_tf = tf;
        }
    }
    return best_tf;
}

}  // namespace

TEST_SUITE("delay_game") {

TEST_CASE("restricted disutility closed forms") {
    // constant-risk game, no distancing
    CHECK(std::abs(restricted_disutility({0.0, 1.0}, GameParams(6.0, 1.0, 3.0)) -
                   (1.0 - std::exp(-3.0))) <= 1e-15);

    // both sides distance the whole game: cost is pure prevention, x/m
    CHECK(std::abs(restricted_disutility({3.0, 3.0}, GameParams(6.0, 0.02, 3.0)) - 0.5) <= 1e-15);

    const GameParams params(6.0, 0.02, 6.0);
    CHECK_THROWS_AS(restricted_disutility({-1.0, 0.0}, params), std::invalid_argument);
    CHECK_THROWS_AS(restricted_disutility({0.0, 6.5}, params), std::invalid_argument);

    // positive everywhere, and below 1 off the x = tf edge (there the
    // prevention cost tf/m reaches exactly 1 for these parameters)
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b) {
            const double d = restricted_disutility({a / 2.0, b / 2.0}, params);
            CHECK(d > 0.0);
            if (a < 12) CHECK(d < 1.0);
            CHECK(d <= 1.0);
        }
}

TEST_CASE("emblematic disutility agrees with the diagonal of D") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const GameParams params = testing::random_params(rng);
        for (int k = 0; k <= 20; ++k) {
            const double xbar = params.tf * (k / 20.0);
            CHECK(std::abs(emblematic_disutility(xbar, params) -
                           restricted_disutility({xbar, xbar}, params)) <= 1e-12);
        }
    }
}

TEST_CASE("emblematic disutility endpoint and interior values") {
    const GameParams params(6.0, 0.02, 6.0);

    // full-duration distancing costs exactly tf/m
    CHECK(std::abs(emblematic_disutility(params.tf, params) - params.tf / params.m) <= 1e-15);

    // no distancing costs the complement of the survival probability; the
    // diagonal of D and the burden identity B(0) = I(tf) both require it
    const double survival = (1.0 - prevalence_at(params.tf, params.i0)) / (1.0 - params.i0);
    CHECK(std::abs(emblematic_disutility(0.0, params) - (1.0 - survival)) <= 1e-15);

    // interior equilibrium value (1 + x* - m i0) / (m (1 - i0))
    const EquilibriumResult eq = nash_equilibrium(params);
    REQUIRE(eq.regime == Regime::Interior);
    const double closed_form =
        (1.0 + eq.x_star - params.m * params.i0) / (params.m * (1.0 - params.i0));
    CHECK(std::abs(emblematic_disutility(eq.x_star, params) - closed_form) <= 1e-12);
}

TEST_CASE("relative disutility is 1 on the diagonal and >= 1 against x*") {
    const GameParams params(6.0, 0.02, 6.0);
    const double x_star = nash_equilibrium(params).x_star;
    CHECK(relative_disutility({1.25, 1.25}, params) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(relative_disutility({0.0, x_star}, params) > 1.0);
    for (int k = 0; k <= 400; ++k) {
        const double y = params.tf * (k / 400.0);
        CHECK(relative_disutility({y, x_star}, params) >= 1.0 - 1e-12);
    }
}

TEST_CASE("nash equilibrium regimes and the golden interior value") {
    const EquilibriumResult golden = nash_equilibrium(GameParams(6.0, 0.02, 6.0));
    CHECK(golden.regime == Regime::Interior);
    CHECK(std::abs(golden.x_star - 2.87) <= 0.01);

    const EquilibriumResult constant_risk = nash_equilibrium(GameParams(6.0, 1.0, 10.0));
    CHECK(constant_risk.x_star == doctest::Approx(5.0).epsilon(1e-14));

    const EquilibriumResult always = nash_equilibrium(GameParams(6.0, 0.5, 2.0));
    CHECK(always.regime == Regime::Always);
    CHECK(always.x_star == 2.0);

    const EquilibriumResult never = nash_equilibrium(GameParams(0.5, 0.1, 5.0));
    CHECK(never.regime == Regime::Never);
    CHECK(never.x_star == 0.0);

    // m = 1 offers no benefit, so the equilibrium never distances
    CHECK(nash_equilibrium(GameParams(1.0, 0.3, 5.0)).regime == Regime::Never);
}

TEST_CASE("interior equilibria satisfy the closed-form conditions") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 300; ++trial) {
        const GameParams params = testing::random_interior_params(rng);
        const EquilibriumResult eq = nash_equilibrium(params);
        CHECK(eq.x_star >= 0.0);
        CHECK(eq.x_star <= params.tf);
        if (!params.constant_risk()) {
            CHECK(eq.x_star < params.m - 1.0);
            const double scale =
                std::exp(params.tf) * params.i0 / (1.0 - params.i0);
            CHECK(std::abs(eq.residual) <= 1e-9 * std::max(1.0, scale));
        }
        // local optimality: I(tf - x*) = 1/(m - x*)
        const double identity = prevalence_at(params.tf - eq.x_star, params.i0) -
                                1.0 / (params.m - eq.x_star);
        CHECK(std::abs(identity) <= 1e-9);
    }
}

TEST_CASE("bisection agrees with the Lambert-W path") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const GameParams params = testing::random_interior_params(rng);
        const double from_w = nash_equilibrium(params).x_star;
        const double from_bisection = nash_equilibrium_bisection(params).x_star;
        CHECK(std::abs(from_w - from_bisection) <= 1e-9);
    }
    CHECK_THROWS_AS(nash_equilibrium_bisection(GameParams(0.5, 0.1, 5.0)), std::logic_error);
}

TEST_CASE("bisection handles the regime boundaries") {
    const double m = 6.0, tf = 6.0;
    // boundary where the never-distance region begins: x* -> 0. The exact
    // tie rounds either way in floats, so nudge just inside the interior.
    {
        const double i0 = (1.0 + 1e-12) / (1.0 + (m - 1.0) * std::exp(tf));
        const GameParams params(m, i0, tf);
        CHECK(classify_regime(params) == Regime::Interior);
        CHECK(std::abs(nash_equilibrium(params).x_star) <= 1e-9);
        CHECK(std::abs(nash_equilibrium_bisection(params).x_star) <= 1e-9);
    }
    // boundary where distancing fills the whole game: x* -> tf
    {
        const double short_tf = 2.0;
        const GameParams params(m, 1.0 / (m - short_tf), short_tf);
        CHECK(classify_regime(params) == Regime::Interior);
        CHECK(std::abs(nash_equilibrium(params).x_star - short_tf) <= 1e-9);
        CHECK(std::abs(nash_equilibrium_bisection(params).x_star - short_tf) <= 1e-9);
    }
}

TEST_CASE("asymptotic approximations") {
    // long game: the expansion lands within 1e-3 of the exact value
    const GameParams long_game(6.0, 0.02, 30.0);
    CHECK(std::abs(asymptotic_equilibrium(long_game, AsymptoticRegime::LongGame) -
                   nash_equilibrium(long_game).x_star) <= 1e-3);

    // leading term as tf grows without bound
    const GameParams very_long(6.0, 0.02, 600.0);
    CHECK(std::abs(asymptotic_equilibrium(very_long, AsymptoticRegime::LongGame) - 5.0) <= 1e-12);

    // short game: the bracket vanishes exactly at tf = ln(1/i0-1) - ln(m-1);
    // built from the same two logs so the cancellation is exact in floats
    const double i0 = 0.001, m = 6.0;
    const double tf0 = std::log(1.0 / i0 - 1.0) - std::log(m - 1.0);
    CHECK(asymptotic_equilibrium(GameParams(m, i0, tf0), AsymptoticRegime::ShortGame) == 0.0);
    CHECK(asymptotic_equilibrium(GameParams(m, i0, tf0 * 0.5), AsymptoticRegime::ShortGame) == 0.0);
    CHECK(asymptotic_equilibrium(GameParams(m, i0, tf0 + 0.5), AsymptoticRegime::ShortGame) ==
          doctest::Approx((1.0 - 1.0 / m) * 0.5).epsilon(1e-12));

    CHECK_THROWS_AS(asymptotic_equilibrium(GameParams(0.8, 0.1, 5.0), AsymptoticRegime::LongGame),
                    std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_equilibrium(GameParams(6.0, 1.0, 5.0), AsymptoticRegime::ShortGame),
                    std::invalid_argument);
}

TEST_CASE("the two burden forms agree") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const GameParams params = testing::random_params(rng);
        for (int k = 0; k <= 16; ++k) {
            const double xbar = params.tf * (k / 16.0);
            const double direct = burden(xbar, params);
            const double via_emblematic =
                params.i0 + (1.0 - params.i0) * emblematic_disutility(xbar, params);
            CHECK(std::abs(direct - via_emblematic) <= 1e-12);
            CHECK(direct >= 0.0);
            // the unit ceiling holds wherever prevention cannot outrun the
            // cost of infection itself, i.e. for xbar <= m
            if (xbar <= params.m) CHECK(direct <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("burden endpoints") {
    const GameParams params(6.0, 0.02, 6.0);
    CHECK(std::abs(burden(0.0, params) - prevalence_at(params.tf, params.i0)) <= 1e-15);
    CHECK(std::abs(burden(params.tf, params) -
                   (params.i0 + params.tf / params.m * (1.0 - params.i0))) <= 1e-15);
    // the constant-risk game has burden identically 1
    CHECK(burden(2.0, GameParams(6.0, 1.0, 4.0)) == 1.0);
}

TEST_CASE("comparative statics: x* and equilibrium burden rise with tf and i0") {
    double previous_x = -1.0, previous_b = -1.0;
    for (int k = 1; k <= 60; ++k) {
        const GameParams params(6.0, 0.02, 0.25 * k);
        const EquilibriumResult eq = nash_equilibrium(params);
        CHECK(eq.x_star >= previous_x - 1e-12);
        const double b = burden(eq.x_star, params);
        CHECK(b >= previous_b - 1e-12);
        previous_x = eq.x_star;
        previous_b = b;
    }
    previous_b = -1.0;
    for (int k = 1; k <= 40; ++k) {
        const GameParams params(6.0, k / 40.0, 6.0);
        const double b = burden(nash_equilibrium(params).x_star, params);
        CHECK(b >= previous_b - 1e-12);
        previous_b = b;
    }
}

TEST_CASE("improvement over indifference") {
    // never-distance games improve nothing
    const BurdenReport never = improvement_over_indifference(GameParams(0.5, 0.1, 5.0));
    CHECK(never.improvement == 0.0);

    // interior games strictly improve
    const BurdenReport golden = improvement_over_indifference(GameParams(6.0, 0.02, 6.0));
    CHECK(golden.improvement > 0.0);
    CHECK(golden.burden_indifferent > golden.burden);

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        CHECK(improvement_over_indifference(testing::random_params(rng)).improvement >= 0.0);
    }
}

TEST_CASE("improvement peaks near the predicted duration") {
    const double m = 6.0;
    for (const double i0 : {1e-2, 1e-3, 1e-4}) {
        const double predicted = peak_duration(m, i0);
        const double found = improvement_peak(m, i0, 0.25 * predicted, 2.5 * predicted, 1200);
        CHECK(std::abs(found - predicted) <= 0.25 * predicted);
    }
}

TEST_CASE("peak duration formula") {
    CHECK(std::abs(peak_duration(6.0, 0.5) - std::log(5.0)) <= 1e-15);
    CHECK(peak_duration(2.0, 0.5) == 0.0);
    CHECK(std::abs(peak_duration(6.0, 1e-4) - std::log(5.0 * 9999.0)) <= 1e-12);
    CHECK(std::abs(peak_duration(6.0, 1e-4) - 10.8197) <= 1e-3);
    CHECK_THROWS_AS(peak_duration(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(peak_duration(6.0, 1.0), std::invalid_argument);
}

TEST_CASE("small-i0 ceiling of the best achievable improvement") {
    // The closed-form ceiling 1 - 2/m - 2(m-1)ln(m-1)/m^2 is an m -> inf
    // approximation. At m = 6 the true limit sits about 0.03 above it
    // (0.2495 vs 0.2196), so the 0.02-wide band only closes from m ~ 12 up.
    const auto max_improvement = [](double m, double i0) {
        double best = 0.0;
        for (int k = 1; k <= 3000; ++k)
            best = std::max(best, improvement_at(m, i0, 0.05 * k));
        return best;
    };
    const auto ceiling = [](double m) {
        return 1.0 - 2.0 / m - 2.0 * (m - 1.0) * std::log(m - 1.0) / (m * m);
    };

    const double at_m6 = max_improvement(6.0, 1e-8);
    CHECK(at_m6 == doctest::Approx(0.2494549).epsilon(2e-4));
    CHECK(at_m6 <= ceiling(6.0) + 0.031);
    CHECK(at_m6 > ceiling(6.0));  // the closed-form ceiling undershoots at small m

    CHECK(max_improvement(12.0, 1e-8) <= ceiling(12.0) + 0.02);
    CHECK(max_improvement(24.0, 1e-8) <= ceiling(24.0) + 0.02);
}

TEST_CASE("stability slacks are positive at the golden parameters") {
    const GameParams params(6.0, 0.02, 6.0);
    const EssReport report = ess_check(params, 10001);
    CHECK(report.interior_equilibrium);
    CHECK(report.min_nash_slack > 0.0);
    CHECK(report.min_invasion_slack > 0.0);
    CHECK(std::abs(report.emblematic_argmin - report.x_star) <= params.tf / 10000.0 + 1e-12);
}

TEST_CASE("factored slacks agree with the direct disutility differences") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const GameParams params = testing::random_interior_params(rng);
        const double xs = nash_equilibrium(params).x_star;
        const double d_star = restricted_disutility({xs, xs}, params);
        const EssReport report = ess_check(params, 257);

        double naive_nash = std::numeric_limits<double>::infinity();
        double naive_invasion = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 257; ++k) {
            const double y = params.tf * (k / 256.0);
            if (y == xs) continue;
            naive_nash =
                std::min(naive_nash, restricted_disutility({y, xs}, params) - d_star);
            naive_invasion = std::min(naive_invasion,
                                      restricted_disutility({y, y}, params) -
                                          restricted_disutility({xs, y}, params));
        }
        CHECK(std::abs(report.min_nash_slack - naive_nash) <= 1e-12);
        CHECK(std::abs(report.min_invasion_slack - naive_invasion) <= 1e-12);
    }
}

TEST_CASE("boundary equilibria fall back to the one-sided check") {
    const EssReport report = ess_check(GameParams(6.0, 0.5, 2.0), 2001);  // always-distance
    CHECK_FALSE(report.interior_equilibrium);
    CHECK(report.min_nash_slack > 0.0);
    CHECK(std::isnan(report.min_invasion_slack));
}

TEST_CASE("auxiliary objectives are minimized at x*") {
    const GameParams params(6.0, 0.02, 6.0);
    const MinimizerReport report = auxiliary_minimizer_check(params, 10001);
    CHECK(report.exp_objective_min_at_star);
    CHECK(report.survival_objective_min_at_star);
    CHECK(report.exp_objective_curvature > 0.0);
    CHECK(report.survival_objective_curvature > 0.0);
    CHECK(std::abs(report.critical_identity_residual) <= 1e-9);
    CHECK_THROWS_AS(auxiliary_minimizer_check(GameParams(0.5, 0.1, 5.0), 101), std::logic_error);
}

TEST_CASE("no free-riding: the social optimum is the equilibrium") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const GameParams params = testing::random_interior_params(rng);
        const EssReport report = ess_check(params, 4001);
        const double cell = params.tf / 4000.0;
        // within one cell, or indistinguishable from the minimum in floats
        // (near-degenerate equilibria make E flat beyond double resolution)
        const bool argmin_ok =
            std::abs(report.emblematic_argmin - report.x_star) <= cell + 1e-12 ||
            report.emblematic_gap_at_star <= 1e-15;
        CHECK(argmin_ok);

        // derivative of E vanishes at x*
        const double h = 1e-5;
        if (report.x_star > h && report.x_star < params.tf - h) {
            const double slope = (emblematic_disutility(report.x_star + h, params) -
                                  emblematic_disutility(report.x_star - h, params)) /
                                 (2.0 * h);
            CHECK(std::abs(slope) <= 1e-6);
        }
    }
}

TEST_CASE("disutility partials match finite differences of D") {
    std::mt19937_64 rng(59);
    const double h = 1e-5;
    for (int trial = 0; trial < 40; ++trial) {
        const GameParams params = testing::random_interior_params(rng);
        if (params.constant_risk()) continue;
        std::uniform_real_distribution<double> inner(0.1, 0.9);
        double x = params.tf * inner(rng);
        double xbar = params.tf * inner(rng);
        if (std::abs(x - xbar) < 4.0 * h) x += 8.0 * h * (x < xbar ? -1.0 : 1.0);
        if (x < h || x > params.tf - h) continue;

        const SurvivalPartials partials = survival_partials({x, xbar}, params);
        const double factor = 1.0 - x / params.m;
        const double dd_dx =
            -partials.dp_dx * factor + survival_probability(x, xbar, params) / params.m;
        const double dd_dxbar = -partials.dp_dxbar * factor;

        const double fd_x = (restricted_disutility({x + h, xbar}, params) -
                             restricted_disutility({x - h, xbar}, params)) /
                            (2.0 * h);
        const double fd_xbar = (restricted_disutility({x, xbar + h}, params) -
                                restricted_disutility({x, xbar - h}, params)) /
                               (2.0 * h);
        CHECK(std::abs(dd_dx - fd_x) <= 1e-6);
        CHECK(std::abs(dd_dxbar - fd_xbar) <= 1e-6);
    }
}

}  // TEST_SUITE
