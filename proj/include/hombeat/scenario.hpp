#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hombeat/model.hpp"

namespace hombeat {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat : std::uint8_t { Csv, Json, Svg };

OutputFormat format_from_string(const std::string& name);
const char* to_string(OutputFormat f);

// Sweep axes for the Monte-Carlo command. delta_omega is parameterized as
// tau * delta_omega, the model's natural dimensionless shift.
struct SweepSpec {
    std::vector<double> nu{1.0, 0.7};
    std::vector<double> tau_domega{0.5, 1.0, 3.0};
    std::vector<long> n_events{10, 100, 1000};
};

// One config object drives every subcommand; commands read the fragments
// they need. Loaded from JSON; CLI flags override individual fields.
struct ScenarioConfig {
    ModelParams model{1.0, 1.0, 1.0, 4.0, Envelope::Gaussian};
    SweepSpec sweep;

    // sampler fragment
    long n_events = 1000;
    std::uint64_t seed = 12345;
    std::optional<double> quantization;
    bool keep_uninformative = true;

    // estimator fragment; zeros mean "auto" (see effective_* helpers)
    double omega_max = 0.0;
    int coarse_grid_points = 0;
    double refine_tol = 0.0;

    // montecarlo fragment
    long repetitions = 10000;
    int threads = 0;  // 0: hardware concurrency

    std::filesystem::path output_dir = "out";
    OutputFormat format = OutputFormat::Csv;

    // figure grids
    int curve_points = 601;                           // density / contribution delta_t grid
    std::vector<double> contribution_nu{1.0, 0.9, 0.8, 0.7};
    std::vector<double> compare_nu{1.0, 0.9, 0.8};
    int compare_points = 41;                          // log-spaced in 1/(tau delta_omega)
    double compare_inv_min = 0.05;
    double compare_inv_max = 10.0;

    void validate() const;
};

// Strict JSON loader: unknown keys are configuration errors.
ScenarioConfig scenario_from_json_text(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// JSON echo of the full configuration, embedded in output manifests so any
// output file can be reproduced from its manifest alone.
std::string scenario_to_json_text(const ScenarioConfig& config);

}  // namespace hombeat
