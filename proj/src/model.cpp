#include "sisdg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sisdg {

GameParams::GameParams(double m_, double i0_, double tf_) : m(m_), i0(i0_), tf(tf_) {
    if (!(std::isfinite(m) && m > 0.0))
        throw std::invalid_argument("GameParams: m must be positive and finite");
    if (!(std::isfinite(i0) && i0 > 0.0 && i0 <= 1.0))
        throw std::invalid_argument("GameParams: i0 must lie in (0, 1]");
    if (!(std::isfinite(tf) && tf > 0.0))
        throw std::invalid_argument("GameParams: tf must be positive and finite");
}

double sigma(double c, double m) {
    if (!(m > 0.0))
        throw std::invalid_argument("sigma: m must be positive");
    if (!(c >= 0.0))
        throw std::invalid_argument("sigma: spending rate must be nonnegative");
    return std::max(0.0, 1.0 - m * c);
}

double prevalence_at(double u, double i0) {
    if (!(i0 > 0.0 && i0 <= 1.0))
        throw std::invalid_argument("prevalence_at: i0 must lie in (0, 1]");
    if (i0 == 1.0) return 1.0;
    const double decay = (1.0 - i0) * std::exp(-u);
    if (decay > std::numeric_limits<double>::min())
        return i0 / (i0 + decay);
    return 1.0 / (1.0 + std::exp(std::log1p(-i0) - std::log(i0) - u));
}

double survival_probability(double x, double xbar, const GameParams& params) {
    if (params.constant_risk())
        throw std::invalid_argument(
            "survival_probability: i0 = 1 is the constant-risk branch, p = exp(x - tf)");
    if (!(x >= 0.0 && x <= params.tf) || !(xbar >= 0.0 && xbar <= params.tf))
        throw std::invalid_argument("survival_probability: durations must lie in [0, tf]");
    const double s = params.tf - std::max(x, xbar);
    const double infected = prevalence_at(s, params.i0);
    return (1.0 - infected) / (1.0 - params.i0) *
           std::exp(-infected * std::max(xbar - x, 0.0));
}

}  // namespace sisdg
