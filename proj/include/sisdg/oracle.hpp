#pragma once

#include <cstddef>
#include <vector>

#include "sisdg/delay_game.hpp"
#include "sisdg/model.hpp"

namespace sisdg {

/// Piecewise-constant spending schedule on [0, tf]: values[k] applies between
/// breakpoints[k-1] and breakpoints[k] (right-continuous at the jumps).
struct PiecewiseStrategy {
    std::vector<double> breakpoints;  ///< interior jump times, strictly increasing
    std::vector<double> values;       ///< one per interval; size == breakpoints.size() + 1

    static PiecewiseStrategy constant(double c);
    /// Off-then-on delay strategy: distance at rate 1/m for the final x units.
    static PiecewiseStrategy delay(double x, const GameParams& params);
    /// Uniform-interval strategy over [0, tf]; adjacent equal values merge.
    static PiecewiseStrategy from_lattice(const std::vector<double>& interval_values, double tf);

    double value_at(double t) const;
    void validate(double tf) const;
};

struct SimulationResult {
    double disutility;
    std::vector<double> times;
    std::vector<double> i_path;
    std::vector<double> p_path;
    double step;
};

/// Brute-force play-out: fixed-step RK4 on (I, p) with the running cost
/// integrated as a third state, and every strategy breakpoint inserted as an
/// exact mesh boundary. step <= 0 selects the default tf/2048.
SimulationResult simulate(const PiecewiseStrategy& c, const PiecewiseStrategy& cbar,
                          const GameParams& params, double step = 0.0);

/// Discretized best response to a fixed population strategy: minimizes the
/// simulated disutility over piecewise-constant strategies on n_intervals
/// uniform intervals with values from a uniform ladder on [0, 1/m]. Small
/// lattices (levels^n <= 4096) are searched exhaustively; larger ones by
/// coordinate descent from every off-then-on seed plus 5 random restarts.
PiecewiseStrategy best_response_search(const PiecewiseStrategy& cbar, const GameParams& params,
                                       std::size_t n_intervals, std::size_t levels = 2);

/// D(best lattice response to c*, c*) - D(c*, c*), both simulated. Nonnegative
/// up to integration error when c* is the equilibrium; shrinks as the lattice
/// refines.
double nash_residual(const GameParams& params, std::size_t n_intervals);

/// Largest deviation between the closed-form survival partials and finite
/// differences (central away from x = xbar, one-sided limits on it).
double derivative_check(const DelayPair& pair, const GameParams& params);

}  // namespace sisdg
