#pragma once

#include <string>

#include "sisdg/model.hpp"

namespace sisdg {

/// A dimensional outbreak description, converted to game units by
/// nondimensionalize(). Time fields are in weeks, money fields in any
/// consistent currency.
struct ScenarioConfig {
    double population;
    double initial_cases;
    double doubling_time;     ///< initial epidemic doubling time, weeks
    double infection_cost;    ///< expected loss per infection
    double max_weekly_spend;  ///< spending cap that fully blocks exposure
    double vaccine_wait;      ///< weeks until the vaccine arrives
};

/// Converts to the nondimensional triple: one time unit is
/// doubling_time/ln 2 weeks, costs are measured in infection costs, so
/// i0 = initial_cases/population, tf = vaccine_wait/unit, and
/// m = infection_cost / (max_weekly_spend * unit).
GameParams nondimensionalize(const ScenarioConfig& scenario);

/// Reads a ScenarioConfig from a JSON file with keys population,
/// initial_cases, doubling_time, infection_cost, max_weekly_spend,
/// vaccine_wait.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace sisdg
