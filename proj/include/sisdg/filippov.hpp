#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sisdg/model.hpp"

namespace sisdg {

/// A point of the switching system in decision-potential coordinates.
/// phi = I (V + 1); the admissible region is 0 < phi <= i, and phi is
/// strictly increasing along every solution.
struct PotentialState {
    double t;
    double i;
    double phi;
};

/// Shadow value of susceptibility, V = phi / i - 1; lies in [-1, 0] on
/// admissible states.
double shadow_value(const PotentialState& state);

/// Set of optimal spending rates at a given potential: {0} below the line
/// phi = 1/m, {1/m} above it, and the full interval [0, 1/m] on the line.
struct ControlSet {
    double lower;
    double upper;
    bool singleton() const { return lower == upper; }
};

ControlSet control_rule(double phi, double m);

/// Advance a state with c = 0 for time dt: i follows the logistic flow and
/// phi grows by e^{dt}. The caller must split at the switch time; crossing
/// the line phi = 1/m inside (0, dt) throws.
PotentialState flow_free(const PotentialState& state, double dt, double m);

/// Advance a state with c = 1/m for time dt: i is frozen and phi grows
/// linearly with slope i/m.
PotentialState flow_locked(const PotentialState& state, double dt, double m);

/// Time for the free flow to reach the switching line: tau = -ln(m phi0).
/// Requires 0 < phi0 <= 1/m.
double switch_time(double phi0, double m);

enum class TrajectoryRegime { SinglePhaseFree, SinglePhaseLocked, TwoPhase };

const char* to_string(TrajectoryRegime regime);

struct DurationResult {
    double tf;
    TrajectoryRegime regime;
};

/// Closed-form game durations per phase structure. Exposed individually so
/// their agreement at the regime boundaries can be checked directly.
double single_phase_free_duration(double phi0, const GameParams& params);
double single_phase_locked_duration(double phi0, const GameParams& params);
double two_phase_duration(double phi0, const GameParams& params);

/// Total game duration reaching the terminal surface phi = i from the
/// initial potential phi0 in (0, i0]. Strictly decreasing in phi0.
DurationResult tf_of_phi0(double phi0, const GameParams& params);

/// Inverse of tf_of_phi0 at params.tf: analytic on the single-phase
/// branches, monotone bisection on the two-phase one, converged to
/// |delta tf| <= 1e-11 (or to the best a double can represent when extreme
/// m/i0 ratios push the duration's conditioning beyond that).
double phi0_of_tf(const GameParams& params);

struct TrajectorySegment {
    PotentialState start;
    double control;  ///< 0 or 1/m
    double duration;
};

/// The unique trajectory satisfying the necessary conditions: at most one
/// switch, upward in c, with disutility 1 - phi0/i0 = -V(0).
struct EquilibriumTrajectory {
    std::vector<TrajectorySegment> segments;
    std::optional<double> tau;  ///< switch time; absent for a free single phase
    double tf;
    double phi0;
    double v0;
    double disutility;

    double control_at(double t) const;
    PotentialState state_at(double t) const;
    PotentialState terminal_state() const { return state_at(tf); }
};

EquilibriumTrajectory equilibrium_trajectory(const GameParams& params);

struct MonotonicityReport {
    int free_violations;    ///< adjacent-pair failures of min(t*, tau) decreasing in phi0
    int locked_violations;  ///< failures of the locked duration decreasing in phi0
    double max_switch_derivative_error;    ///< analytic d tf/d tau vs. finite differences
    double free_two_phase_boundary_gap;    ///< NaN when the boundary is outside the domain
    double locked_two_phase_boundary_gap;  ///< NaN when i0 < 1/m
};

/// Grid verification of the three monotonicity facts behind the duration
/// bijection, plus the pairwise agreement of the closed forms at their
/// regime boundaries.
MonotonicityReport duration_monotonicity_suite(const GameParams& params,
                                            std::size_t grid_size = 1001);

}  // namespace sisdg
