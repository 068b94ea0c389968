#include "sisdg/lambert.hpp"

#include <cmath>
#include <stdexcept>

// Initial guess from the asymptotic log expansion (large z), the Taylor
// series about 0, or the branch-point sqrt series, then Halley iteration.
// Three to five steps reach full double precision everywhere on the branch.

namespace sisdg {
namespace {

constexpr double kE = 2.718281828459045235;
constexpr double kBranchPoint = -0.3678794411714423216;  // -1/e

double initial_guess(double z) {
    if (z > kE) {
        const double l = std::log(z);
        const double ll = std::log(l);
        return l - ll + ll / l;
    }
    if (z > 0.25) return std::log1p(z);  // crude, but well inside Halley's basin
    if (z > -0.25)
        return z * (1.0 + z * (-1.0 + z * (1.5 - z * (8.0 / 3.0))));
    const double p = std::sqrt(std::max(0.0, 2.0 * (1.0 + kE * z)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
}

double halley_step(double w, double z) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    return w - f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
}

}  // namespace

double lambert_w0(double z) {
    if (std::isnan(z) || z < kBranchPoint)
        throw std::domain_error("lambert_w0: argument below -1/e");
    if (z == 0.0) return 0.0;

    double w = initial_guess(z);
    for (int iter = 0; iter < 60; ++iter) {
        const double next = halley_step(w, z);
        if (!std::isfinite(next)) break;
        const double step = std::abs(next - w);
        w = next;
        if (step <= 1e-14 * (1.0 + std::abs(w))) break;
    }
    return w;
}

double lambert_w0_log(double log_z) {
    if (log_z <= 700.0) return lambert_w0(std::exp(log_z));
    // e^log_z overflows; solve w + ln w = log_z by Newton instead
    double w = log_z - std::log(log_z);
    for (int iter = 0; iter < 40; ++iter) {
        const double step = (w + std::log(w) - log_z) / (1.0 + 1.0 / w);
        w -= step;
        if (std::abs(step) <= 1e-15 * w) break;
    }
    return w;
}

}  // namespace sisdg
