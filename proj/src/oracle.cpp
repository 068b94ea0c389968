#include "sisdg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace sisdg {
namespace {

struct Rk4State {
    double infected;
    double susceptible_prob;
    double cost;
};

Rk4State derivatives(const Rk4State& s, double sigma_c, double sigma_cbar, double c) {
    return {sigma_cbar * s.infected * (1.0 - s.infected),
            -sigma_c * s.infected * s.susceptible_prob,
            (c + sigma_c * s.infected) * s.susceptible_prob};
}

std::vector<double> merge_breakpoints(const PiecewiseStrategy& a, const PiecewiseStrategy& b,
                                      double tf) {
    std::vector<double> mesh{0.0, tf};
    mesh.insert(mesh.end(), a.breakpoints.begin(), a.breakpoints.end());
    mesh.insert(mesh.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(mesh.begin(), mesh.end());
    mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
    return mesh;
}

}  // namespace

PiecewiseStrategy PiecewiseStrategy::constant(double c) { return {{}, {c}}; }

PiecewiseStrategy PiecewiseStrategy::delay(double x, const GameParams& params) {
    if (!(x >= 0.0 && x <= params.tf))
        throw std::invalid_argument("PiecewiseStrategy::delay: x must lie in [0, tf]");
    const double full = 1.0 / params.m;
    if (x == 0.0) return constant(0.0);
    if (x == params.tf) return constant(full);
    return {{params.tf - x}, {0.0, full}};
}

PiecewiseStrategy PiecewiseStrategy::from_lattice(const std::vector<double>& interval_values,
                                                  double tf) {
    if (interval_values.empty())
        throw std::invalid_argument("PiecewiseStrategy::from_lattice: no intervals");
    const std::size_t n = interval_values.size();
    PiecewiseStrategy strat;
    strat.values.push_back(interval_values.front());
    for (std::size_t k = 1; k < n; ++k) {
        if (interval_values[k] == strat.values.back()) continue;
        strat.breakpoints.push_back(tf * static_cast<double>(k) / static_cast<double>(n));
        strat.values.push_back(interval_values[k]);
    }
    return strat;
}

double PiecewiseStrategy::value_at(double t) const {
    std::size_t k = 0;
    while (k < breakpoints.size() && t >= breakpoints[k]) ++k;
    return values[k];
}

void PiecewiseStrategy::validate(double tf) const {
    if (values.size() != breakpoints.size() + 1)
        throw std::invalid_argument("PiecewiseStrategy: values must outnumber breakpoints by one");
    double previous = -std::numeric_limits<double>::infinity();
    for (const double b : breakpoints) {
        if (!(b >= 0.0 && b <= tf && b > previous))
            throw std::invalid_argument("PiecewiseStrategy: breakpoints must increase within [0, tf]");
        previous = b;
    }
    for (const double v : values)
        if (!(std::isfinite(v) && v >= 0.0))
            throw std::invalid_argument("PiecewiseStrategy: values must be finite and nonnegative");
}

SimulationResult simulate(const PiecewiseStrategy& c, const PiecewiseStrategy& cbar,
                          const GameParams& params, double step) {
    c.validate(params.tf);
    cbar.validate(params.tf);
    if (step <= 0.0) step = params.tf / 2048.0;

    const std::vector<double> mesh = merge_breakpoints(c, cbar, params.tf);
    Rk4State state{params.i0, 1.0, 0.0};

    SimulationResult result;
    result.step = step;
    result.times.push_back(0.0);
    result.i_path.push_back(state.infected);
    result.p_path.push_back(state.susceptible_prob);

    for (std::size_t seg = 0; seg + 1 < mesh.size(); ++seg) {
        const double a = mesh[seg], b = mesh[seg + 1];
        const double mid = 0.5 * (a + b);
        const double c_val = c.value_at(mid);
        const double cbar_val = cbar.value_at(mid);
        const double sig_c = sigma(c_val, params.m);
        const double sig_cbar = sigma(cbar_val, params.m);

        const auto substeps = static_cast<std::size_t>(std::ceil((b - a) / step - 1e-12));
        const std::size_t n = std::max<std::size_t>(1, substeps);
        const double h = (b - a) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Rk4State k1 = derivatives(state, sig_c, sig_cbar, c_val);
            const Rk4State s2{state.infected + 0.5 * h * k1.infected,
                              state.susceptible_prob + 0.5 * h * k1.susceptible_prob, 0.0};
            const Rk4State k2 = derivatives(s2, sig_c, sig_cbar, c_val);
            const Rk4State s3{state.infected + 0.5 * h * k2.infected,
                              state.susceptible_prob + 0.5 * h * k2.susceptible_prob, 0.0};
            const Rk4State k3 = derivatives(s3, sig_c, sig_cbar, c_val);
            const Rk4State s4{state.infected + h * k3.infected,
                              state.susceptible_prob + h * k3.susceptible_prob, 0.0};
            const Rk4State k4 = derivatives(s4, sig_c, sig_cbar, c_val);
            state.infected += h / 6.0 * (k1.infected + 2.0 * k2.infected + 2.0 * k3.infected + k4.infected);
            state.susceptible_prob +=
                h / 6.0 *
                (k1.susceptible_prob + 2.0 * k2.susceptible_prob + 2.0 * k3.susceptible_prob +
                 k4.susceptible_prob);
            state.cost += h / 6.0 * (k1.cost + 2.0 * k2.cost + 2.0 * k3.cost + k4.cost);
            result.times.push_back(a + h * static_cast<double>(k + 1));
            result.i_path.push_back(state.infected);
            result.p_path.push_back(state.susceptible_prob);
        }
    }
    result.disutility = state.cost;
    return result;
}

PiecewiseStrategy best_response_search(const PiecewiseStrategy& cbar, const GameParams& params,
                                       std::size_t n_intervals, std::size_t levels) {
    if (n_intervals < 2)
        throw std::invalid_argument("best_response_search: n_intervals must be >= 2");
    if (levels < 2) throw std::invalid_argument("best_response_search: levels must be >= 2");
    cbar.validate(params.tf);

    std::vector<double> ladder(levels);
    for (std::size_t k = 0; k < levels; ++k)
        ladder[k] = (1.0 / params.m) * static_cast<double>(k) / static_cast<double>(levels - 1);

    const auto evaluate = [&](const std::vector<std::size_t>& assign) {
        std::vector<double> vals(n_intervals);
        for (std::size_t k = 0; k < n_intervals; ++k) vals[k] = ladder[assign[k]];
        return simulate(PiecewiseStrategy::from_lattice(vals, params.tf), cbar, params).disutility;
    };

    double lattice_size = 1.0;
    for (std::size_t k = 0; k < n_intervals && lattice_size <= 4096.0; ++k)
        lattice_size *= static_cast<double>(levels);

    std::vector<std::size_t> best;
    double best_cost = std::numeric_limits<double>::infinity();
    const auto consider = [&](const std::vector<std::size_t>& assign) {
        const double cost = evaluate(assign);
        if (cost < best_cost) {
            best_cost = cost;
            best = assign;
        }
        return cost;
    };

    if (lattice_size <= 4096.0) {
        std::vector<std::size_t> assign(n_intervals, 0);
        while (true) {
            consider(assign);
            std::size_t pos = 0;
            while (pos < n_intervals && ++assign[pos] == levels) assign[pos++] = 0;
            if (pos == n_intervals) break;
        }
    } else {
        std::vector<std::vector<std::size_t>> seeds;
        for (std::size_t sw = 0; sw <= n_intervals; ++sw) {
            std::vector<std::size_t> seed(n_intervals, 0);
            for (std::size_t k = sw; k < n_intervals; ++k) seed[k] = levels - 1;
            seeds.push_back(std::move(seed));
        }
        std::mt19937_64 rng(0x515d6u);
        std::uniform_int_distribution<std::size_t> pick(0, levels - 1);
        for (int restart = 0; restart < 5; ++restart) {
            std::vector<std::size_t> seed(n_intervals);
            for (auto& level : seed) level = pick(rng);
            seeds.push_back(std::move(seed));
        }

        for (auto& assign : seeds) {
            double cost = evaluate(assign);
            bool improved = true;
            for (int sweep = 0; sweep < 64 && improved; ++sweep) {
                improved = false;
                for (std::size_t pos = 0; pos < n_intervals; ++pos) {
                    const std::size_t original = assign[pos];
                    std::size_t chosen = original;
                    for (std::size_t level = 0; level < levels; ++level) {
                        if (level == original) continue;
                        assign[pos] = level;
                        const double trial = evaluate(assign);
                        if (trial < cost) {
                            cost = trial;
                            chosen = level;
                            improved = true;
                        }
                    }
                    assign[pos] = chosen;
                }
            }
            if (cost < best_cost) {
                best_cost = cost;
                best = assign;
            }
        }
    }

    std::vector<double> vals(n_intervals);
    for (std::size_t k = 0; k < n_intervals; ++k) vals[k] = ladder[best[k]];
    return PiecewiseStrategy::from_lattice(vals, params.tf);
}

double nash_residual(const GameParams& params, std::size_t n_intervals) {
    const EquilibriumResult eq = nash_equilibrium(params);
    const PiecewiseStrategy equilibrium = PiecewiseStrategy::delay(eq.x_star, params);
    const PiecewiseStrategy response = best_response_search(equilibrium, params, n_intervals, 2);
    return simulate(response, equilibrium, params).disutility -
           simulate(equilibrium, equilibrium, params).disutility;
}

double derivative_check(const DelayPair& pair, const GameParams& params) {
    if (params.constant_risk())
        throw std::invalid_argument("derivative_check: requires i0 < 1");
    const double h = 1e-5;
    const auto p = [&](double x, double xbar) {
        return survival_probability(x, xbar, params);
    };
    const SurvivalPartials analytic = survival_partials(pair, params);

    double max_err = 0.0;
    if (pair.x == pair.xbar) {
        // one-sided limits on the diagonal
        const double ahead_x = (p(pair.x + h, pair.xbar) - p(pair.x, pair.xbar)) / h;
        const double behind_x = (p(pair.x, pair.xbar) - p(pair.x - h, pair.xbar)) / h;
        const double ahead_xbar = (p(pair.x, pair.xbar + h) - p(pair.x, pair.xbar)) / h;
        const double behind_xbar = (p(pair.x, pair.xbar) - p(pair.x, pair.xbar - h)) / h;
        max_err = std::max({std::abs(ahead_x - analytic.dp_dx),
                            std::abs(behind_x - analytic.dp_dx),
                            std::abs(ahead_xbar - analytic.dp_dxbar),
                            std::abs(behind_xbar - analytic.dp_dxbar)});
    } else {
        const double fd_x = (p(pair.x + h, pair.xbar) - p(pair.x - h, pair.xbar)) / (2.0 * h);
        const double fd_xbar = (p(pair.x, pair.xbar + h) - p(pair.x, pair.xbar - h)) / (2.0 * h);
        max_err = std::max(std::abs(fd_x - analytic.dp_dx),
                           std::abs(fd_xbar - analytic.dp_dxbar));
    }
    return max_err;
}

}  // namespace sisdg
