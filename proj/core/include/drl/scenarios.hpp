#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "drl/analysis.hpp"

namespace drl {

struct Measurement {
    std::string name;
    double value = 0.0;
};

/// One compared quantity: passes when lower <= value <= upper.
struct Check {
    std::string name;
    double value = 0.0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    /// Where the threshold comes from.
    std::string source;
    bool passed = false;
};

struct VerificationReport {
    std::string id;
    std::string claim;
    std::vector<Measurement> measured;
    std::vector<Check> checks;
    std::vector<std::string> diagnostics;
    /// Set when a measured value goes beyond what the theory proves.
    bool artifact_finding = false;
    bool passed = false;
    double runtime_seconds = 0.0;
    QuadConfig budgets;
};

/// Sampling window used for fits and classification.
struct FitWindow {
    double t_min = 1e2;
    double t_max = 1e6;
    int points = 13;

    std::vector<double> grid() const { return log_grid(t_min, t_max, points); }
};

struct ScenarioConfig {
    QuadConfig quad;
    double delta0 = kDefaultDelta0;
    FitWindow window;
    double classify_tol = 0.05;
};

/// Known ids in catalog order.
const std::vector<std::string>& scenario_ids();

/// Runs one scenario. `n` restricts the dimension where the scenario has a
/// dimension list (THM_1_1, THM_1_3, THM_1_4). Unknown ids and dimensions
/// outside the list throw InvalidInput; numerical failures produce a failed
/// report with diagnostics.
VerificationReport run_scenario(const std::string& id, std::optional<int> n = std::nullopt,
                                const ScenarioConfig& cfg = {});

/// Every scenario in the catalog.
std::vector<VerificationReport> run_all(const ScenarioConfig& cfg = {});

struct SweepRow {
    double sigma = 0.0;
    int n = 0;
    GrowthClass growth;
    GrowthKind expected = GrowthKind::Ambiguous;
    /// 2 - n/sigma for the power cells, NaN otherwise.
    double expected_alpha = std::numeric_limits<double>::quiet_NaN();
    bool matches = false;
    std::string error;
};

/// Growth class of ||u(t)||^2 for Gaussian u1, u0 = 0, over every (sigma, n)
/// pair. A cell matches when the class agrees with the n vs 2 sigma pattern
/// and, for power cells, the exponent is within alpha_tol of 2 - n/sigma.
std::vector<SweepRow> sigma_sweep(const std::vector<double>& sigmas, const std::vector<int>& ns,
                                  const ScenarioConfig& cfg = {}, double alpha_tol = 0.05);

} // namespace drl
