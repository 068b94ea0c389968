#include "sisdg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace sisdg {
namespace {

void check_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0))
        throw std::invalid_argument(std::string("scenario: ") + name + " must be positive");
}

}  // namespace

GameParams nondimensionalize(const ScenarioConfig& scenario) {
    check_positive(scenario.population, "population");
    check_positive(scenario.initial_cases, "initial_cases");
    check_positive(scenario.doubling_time, "doubling_time");
    check_positive(scenario.infection_cost, "infection_cost");
    check_positive(scenario.max_weekly_spend, "max_weekly_spend");
    check_positive(scenario.vaccine_wait, "vaccine_wait");
    if (scenario.initial_cases >= scenario.population)
        throw std::invalid_argument("scenario: initial_cases must be below population");

    const double time_unit = scenario.doubling_time / std::numbers::ln2;  // weeks
    return GameParams(scenario.infection_cost / (scenario.max_weekly_spend * time_unit),
                      scenario.initial_cases / scenario.population,
                      scenario.vaccine_wait / time_unit);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open " + path);
    nlohmann::json doc;
    in >> doc;
    return ScenarioConfig{
        doc.at("population").get<double>(),     doc.at("initial_cases").get<double>(),
        doc.at("doubling_time").get<double>(),  doc.at("infection_cost").get<double>(),
        doc.at("max_weekly_spend").get<double>(), doc.at("vaccine_wait").get<double>(),
    };
}

}  // namespace sisdg
