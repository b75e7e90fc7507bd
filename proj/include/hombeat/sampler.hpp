#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hombeat/model.hpp"

namespace hombeat {

struct SamplerConfig {
    ModelParams params;
    long n_events = 1;          // experiment repetitions
    std::uint64_t seed = 0;
    std::optional<double> quantization;  // detector time resolution, ns; rounds recorded dt
    bool keep_uninformative = true;      // store Zero/OnePhoton outcomes too

    void validate() const;
};

struct VariantCounts {
    long zero_photon = 0;
    long one_photon = 0;
    long bunch = 0;
    long coincidence = 0;

    long two_photon() const { return bunch + coincidence; }
    long total() const { return zero_photon + one_photon + two_photon(); }

    friend bool operator==(const VariantCounts&, const VariantCounts&) = default;
};

// A synthetic measurement record. `counts` tallies all n_events repetitions;
// when keep_uninformative is false only two-photon outcomes are stored, with
// their original repetition indices preserved in `trial_index`.
struct SampleBatch {
    SamplerConfig config;
    std::vector<DetectionOutcome> outcomes;
    std::vector<long> trial_index;  // parallel to outcomes
    VariantCounts counts;
};

// Draw a batch distributed exactly according to the model: detection class
// from the (P0, P1, gamma^2) ladder, then the delay from the class-marginal
// Gaussian N(0, 2 tau^2), then the event class from the conditional Bernoulli
// (1 + nu cos(delta_omega dt))/2, then optional quantization of the recorded
// delay. Each repetition uses its own RNG stream derived from (seed, index),
// so the result is independent of evaluation order.
SampleBatch draw_batch(const SamplerConfig& config);

// Per-class binned frequencies of the two-photon delays. Each in-range event
// carries weight 1/n_two_photon, so the frequencies sum to the in-range
// fraction of two-photon events.
struct ClassHistogram {
    double lo = 0.0;
    double hi = 0.0;
    int bins = 0;
    std::vector<double> bunch;              // frequency per bin
    std::vector<double> coincidence;
    std::vector<long> bunch_counts;         // raw counts per bin
    std::vector<long> coincidence_counts;
    long in_range = 0;
    long total_two_photon = 0;

    double bin_width() const { return (hi - lo) / bins; }
    double bin_center(int i) const { return lo + (i + 0.5) * bin_width(); }
};

ClassHistogram empirical_histogram(const SampleBatch& batch, int bins, double lo, double hi);

}  // namespace hombeat
