#pragma once

#include <string>
#include <vector>

#include "srp/dynamics.hpp"

namespace srp {

// One expected-value comparison of a scenario run. `comparison` is one of
// "abs" (|measured - target| <= tolerance), "ge", "le".
struct CheckResult {
    std::string name;
    std::string comparison;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string provenance;
};

struct Report {
    std::string scenario;
    PhysicalParams params;
    IntegratorConfig integrator;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<CheckResult> checks;
    std::vector<std::string> csv_header;
    std::vector<std::vector<double>> csv_rows;

    bool all_passed() const;
    bool has_metric(std::string_view name) const;
    double metric(std::string_view name) const;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::string provenance;
};

// The canned experiment catalog, one entry per reproduced figure/table.
std::vector<ScenarioInfo> list_scenarios();
bool scenario_exists(const std::string& name);

// Overrides are (key, value) pairs: "params.<field>", "params.<field>_MHz"
// (stored as 2*pi*value), "params.<field>_rate_MHz" (stored plainly),
// "integrator.<field>", or a scenario knob such as "deltaJ_MHz",
// "t_end_us", "samples". Unknown keys throw std::invalid_argument.
using Overrides = std::vector<std::pair<std::string, double>>;

Report run_scenario(const std::string& name, const Overrides& overrides = {}, int jobs = 1);

struct SweepSpec {
    std::string scenario;
    std::string parameter;
    std::string metric;
    std::vector<double> values;
    int jobs = 1;
};

struct SweepRow {
    double value = 0.0;
    double metric = 0.0;
    bool ok = false;
    std::string error;
};

// One row per value, input order preserved; per-row failures are recorded
// in the row rather than aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace srp
