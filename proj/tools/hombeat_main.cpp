// hombeat: simulation and estimation toolkit for the frequency shift between
// two photons, measured through time-resolved two-photon interference at a
// beam splitter.
//
// Subcommands: density, contribution, fisher-compare, montecarlo, sample,
// estimate. Exit codes: 0 success, 1 configuration error, 2 numerical
// failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hombeat/commands.hpp"
#include "hombeat/errors.hpp"
#include "hombeat/scenario.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<int> threads;
    bool fast = false;

    std::optional<double> tau, nu, gamma, delta_omega;
    std::optional<long> n_events, repetitions;
    std::optional<double> quantization;
    std::optional<double> omega_max, refine_tol;
    std::optional<int> grid_points;
};

hombeat::ScenarioConfig build_config(const CliOverrides& o) {
    hombeat::ScenarioConfig cfg;
    if (!o.config_path.empty()) cfg = hombeat::load_scenario(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.out_dir) cfg.output_dir = *o.out_dir;
    if (o.format) cfg.format = hombeat::format_from_string(*o.format);
    if (o.threads) cfg.threads = *o.threads;
    if (o.tau) cfg.model.tau = *o.tau;
    if (o.nu) cfg.model.nu = *o.nu;
    if (o.gamma) cfg.model.gamma = *o.gamma;
    if (o.delta_omega) cfg.model.delta_omega = *o.delta_omega;
    if (o.n_events) cfg.n_events = *o.n_events;
    if (o.repetitions) cfg.repetitions = *o.repetitions;
    if (o.quantization) cfg.quantization = *o.quantization;
    if (o.omega_max) cfg.omega_max = *o.omega_max;
    if (o.refine_tol) cfg.refine_tol = *o.refine_tol;
    if (o.grid_points) cfg.coarse_grid_points = *o.grid_points;
    if (o.fast) cfg.repetitions = std::min<long>(cfg.repetitions, 1000);
    cfg.validate();
    return cfg;
}

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "JSON scenario file; flags override its fields");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--format", o.format, "csv|json|svg (CSV is always written)");
    cmd->add_option("--threads", o.threads, "worker threads (0: hardware)");
    cmd->add_flag("--fast", o.fast, "cap Monte-Carlo repetitions at 1000");
    cmd->add_option("--tau", o.tau, "photon temporal std dev, ns");
    cmd->add_option("--nu", o.nu, "indistinguishability in [0,1]");
    cmd->add_option("--gamma", o.gamma, "detector efficiency in [0,1]");
    cmd->add_option("--delta-omega", o.delta_omega, "frequency shift, rad/ns");
    cmd->add_option("--n-events", o.n_events, "repetitions per batch");
    cmd->add_option("--repetitions", o.repetitions, "Monte-Carlo repetitions");
    cmd->add_option("--quantization", o.quantization, "detector time resolution, ns");
    cmd->add_option("--omega-max", o.omega_max, "estimator search bound, rad/ns");
    cmd->add_option("--grid-points", o.grid_points, "estimator coarse grid points");
    cmd->add_option("--refine-tol", o.refine_tol, "estimator refinement tolerance, rad/ns");
}

int report_outcome(const hombeat::CommandOutcome& outcome) {
    for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    return outcome.numerical_failure ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-resolved two-photon interference: frequency-shift simulation and estimation"};
    app.require_subcommand(1);

    CliOverrides o;
    std::string estimate_input;

    CLI::App* density = app.add_subcommand("density", "per-class delay densities and envelope");
    CLI::App* contribution =
        app.add_subcommand("contribution", "Fisher-information contribution per delay");
    CLI::App* compare = app.add_subcommand(
        "fisher-compare", "resolving vs non-resolving Fisher information across shifts");
    CLI::App* montecarlo =
        app.add_subcommand("montecarlo", "MLE variance/bias sweep against the Cramer-Rao bound");
    CLI::App* sample = app.add_subcommand("sample", "draw a batch and export it as CSV");
    CLI::App* estimate =
        app.add_subcommand("estimate", "maximum-likelihood estimate from a batch CSV");
    for (CLI::App* cmd : {density, contribution, compare, montecarlo, sample, estimate})
        add_common_options(cmd, o);
    estimate->add_option("--in", estimate_input, "input batch CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const hombeat::ScenarioConfig cfg = build_config(o);
        if (*density) return report_outcome(hombeat::cmd_density(cfg));
        if (*contribution) return report_outcome(hombeat::cmd_contribution(cfg));
        if (*compare) return report_outcome(hombeat::cmd_fisher_compare(cfg));
        if (*montecarlo) return report_outcome(hombeat::cmd_montecarlo(cfg));
        if (*sample) return report_outcome(hombeat::cmd_sample(cfg));
        if (*estimate) return report_outcome(hombeat::cmd_estimate(cfg, estimate_input));
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const hombeat::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const hombeat::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
