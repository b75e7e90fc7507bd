#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hombeat/scenario.hpp"

namespace hombeat {

struct CommandOutcome {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;  // per-sweep-point failures, run continued
    bool numerical_failure = false;
};

// Per-class outcome densities and the envelope over dt in [-6 tau, 6 tau].
CommandOutcome cmd_density(const ScenarioConfig& config);

// Fisher-information contribution f(dt) and its envelope bound per nu.
CommandOutcome cmd_contribution(const ScenarioConfig& config);

// Resolving vs non-resolving Fisher information against 1/(tau delta_omega),
// with the quantum bound and the large-shift asymptote.
CommandOutcome cmd_fisher_compare(const ScenarioConfig& config);

// Monte-Carlo sweep over (nu, tau delta_omega, n_events): estimator variance
// against the Cramer-Rao bound plus bias, one CSV row per sweep point.
CommandOutcome cmd_montecarlo(const ScenarioConfig& config);

// Draw one batch and export it as CSV.
CommandOutcome cmd_sample(const ScenarioConfig& config);

// Read a batch CSV and write the maximum-likelihood estimate as JSON.
CommandOutcome cmd_estimate(const ScenarioConfig& config, const std::filesystem::path& input_csv);

}  // namespace hombeat
