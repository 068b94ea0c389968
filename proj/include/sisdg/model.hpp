#pragma once

#include <stdexcept>

namespace sisdg {

/// Parameters of the nondimensional SI distancing game. Units are chosen so
/// that the cost of infection, the transmission rate, and the population size
/// are all 1; the game is then fully described by the triple (m, i0, tf).
struct GameParams {
    double m;   ///< distancing efficiency, spending 1/m fully blocks exposure
    double i0;  ///< initial infected fraction, in (0, 1]
    double tf;  ///< game duration (time until the vaccine arrives)

    GameParams(double m, double i0, double tf);

    /// i0 == 1 is the constant-risk game; several closed forms branch on it.
    bool constant_risk() const { return i0 == 1.0; }
};

/// Relative susceptibility under spending rate c: (1 - m c)^+.
/// Zero for all c >= 1/m, so spending beyond 1/m is never useful.
double sigma(double c, double m);

/// Logistic prevalence I(u) = I0 / (I0 + (1 - I0) e^{-u}).
///
/// Evaluated exactly in this form; when the (1 - I0) e^{-u} product
/// underflows the two factors are folded into a single exponent so the
/// tail keeps full relative accuracy.
double prevalence_at(double u, double i0);

/// Probability of remaining susceptible through a game where the individual
/// distances for the last x time units and the population for the last xbar:
///
///   p(x, xbar) = (1 - I(s)) / (1 - I0) * exp(-I(s) (xbar - x)^+),
///   s = tf - max(x, xbar).
///
/// Requires i0 < 1; the constant-risk game has p = exp(x - tf) and is
/// handled by the callers directly.
double survival_probability(double x, double xbar, const GameParams& params);

}  // namespace sisdg
