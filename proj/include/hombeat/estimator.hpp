#pragma once

#include <cstdint>
#include <vector>

#include "hombeat/model.hpp"
#include "hombeat/sampler.hpp"

namespace hombeat {

// The outcome law depends on delta_omega only through cos(delta_omega dt),
// so only |delta_omega| is estimable; the search domain is [0, omega_max].
struct EstimatorConfig {
    double omega_max = 0.0;        // rad/ns, required > 0
    int coarse_grid_points = 2048;
    double refine_tol = 0.0;       // rad/ns; 0 selects the default 1e-9 * omega_max
    ModelParams assumed_params;    // tau, nu, gamma assumed known; delta_omega ignored

    void validate() const;
    double effective_refine_tol() const;

    // Default search-domain bound pi / (4 dt_eff), where dt_eff is the
    // sampler's quantization step or tau/100 when unquantized.
    static double default_omega_max(const SamplerConfig& sampler);
};

struct LogLikelihoodValue {
    double value = 0.0;       // -inf when impossible
    bool impossible = false;  // some event has zero density under this candidate
};

// Log-likelihood of the batch at candidate |delta_omega| = omega. Two-photon
// events contribute log[gamma^2 C(dt)/2 (1 + nu alpha(X) cos(omega dt))];
// zero/one-photon events contribute the omega-independent log P0 / log P1.
LogLikelihoodValue log_likelihood(const SampleBatch& batch, double candidate_omega,
                                  const ModelParams& assumed);

// Log-likelihood on the uniform grid omega_i = omega0 + i * step. Evaluated
// with a per-event rotation recurrence; agrees with log_likelihood up to
// accumulation rounding. Impossible candidates come out as -inf.
std::vector<double> log_likelihood_grid(const SampleBatch& batch, double omega0, double step,
                                        int count, const ModelParams& assumed);

struct EstimationResult {
    double omega_hat = 0.0;
    double log_likelihood = 0.0;
    long n_informative = 0;      // two-photon events used
    bool boundary_flag = false;  // maximizer within one grid step of 0 or omega_max
};

// Maximum-likelihood estimate of |delta_omega|: coarse grid scan over
// [0, omega_max] followed by golden-section refinement in the winning
// bracket. Deterministic for fixed inputs.
EstimationResult mle(const SampleBatch& batch, const EstimatorConfig& config);

struct MonteCarloSummary {
    ModelParams params;
    long n_events = 0;
    long repetitions = 0;
    double mean_estimate = 0.0;
    double variance = 0.0;            // unbiased sample variance
    double variance_crb_ratio = 0.0;  // variance * n_events * F(params)
    double bias_fraction = 0.0;       // (mean - delta_omega) / delta_omega
    long failed = 0;                  // repetitions with no informative events
    std::uint64_t seed = 0;
};

// Repeats draw_batch + mle with per-repetition derived seeds and aggregates
// the estimates. Repetitions may run on several threads; the result is
// independent of thread count and scheduling. Throws NumericalError if more
// than 1% of repetitions fail.
MonteCarloSummary monte_carlo(const ModelParams& params, long n_events, long repetitions,
                              const EstimatorConfig& config, std::uint64_t seed, int threads = 0);

}  // namespace hombeat
