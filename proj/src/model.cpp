#include "hombeat/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hombeat/errors.hpp"

namespace hombeat {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ModelParams::validate() const {
    if (!std::isfinite(tau) || tau <= 0.0)
        throw ConfigError("ModelParams: tau must be positive and finite, got " + std::to_string(tau));
    if (!std::isfinite(nu) || nu < 0.0 || nu > 1.0)
        throw ConfigError("ModelParams: nu must lie in [0,1], got " + std::to_string(nu));
    if (!std::isfinite(gamma) || gamma < 0.0 || gamma > 1.0)
        throw ConfigError("ModelParams: gamma must lie in [0,1], got " + std::to_string(gamma));
    if (!std::isfinite(delta_omega))
        throw ConfigError("ModelParams: delta_omega must be finite");
}

double envelope_c(double delta_t, const ModelParams& params) {
    const double four_tau2 = 4.0 * params.tau * params.tau;
    return std::exp(-delta_t * delta_t / four_tau2) / std::sqrt(kPi * four_tau2);
}

double temporal_intensity(double t, const ModelParams& params) {
    const double tau2 = params.tau * params.tau;
    return std::exp(-t * t / (2.0 * tau2)) / std::sqrt(2.0 * kPi * tau2);
}

double joint_density_t1t2(double t1, double t2, EventClass cls, const ModelParams& params) {
    const double beat = 1.0 + params.nu * class_sign(cls) * std::cos(params.delta_omega * (t2 - t1));
    return 0.5 * temporal_intensity(t1, params) * temporal_intensity(t2, params) * beat;
}

double density_dt(EventClass cls, double delta_t, const ModelParams& params) {
    const double beat = 1.0 + params.nu * class_sign(cls) * std::cos(params.delta_omega * delta_t);
    return 0.5 * envelope_c(delta_t, params) * beat;
}

double prob_zero_photon(const ModelParams& params) {
    const double miss = 1.0 - params.gamma;
    return miss * miss;
}

double prob_one_photon(const ModelParams& params) {
    return 2.0 * params.gamma * (1.0 - params.gamma);
}

double outcome_probability(const DetectionOutcome& outcome, const ModelParams& params) {
    switch (outcome.kind) {
        case OutcomeKind::ZeroPhoton:
            return prob_zero_photon(params);
        case OutcomeKind::OnePhoton:
            return prob_one_photon(params);
        case OutcomeKind::TwoPhoton:
            return params.gamma * params.gamma * density_dt(outcome.cls, outcome.delta_t, params);
    }
    return 0.0;  // unreachable
}

ResolutionStatus resolution_check(const ModelParams& params, double delta_t_resolution,
                                  double margin) {
    params.validate();
    if (!std::isfinite(delta_t_resolution) || delta_t_resolution <= 0.0)
        throw ConfigError("resolution_check: delta_t_resolution must be positive");
    if (!std::isfinite(margin) || margin <= 1.0)
        throw ConfigError("resolution_check: margin must exceed 1 (dimensionless safety factor)");

    const double scaled = delta_t_resolution * margin;
    if (params.delta_omega != 0.0 && scaled > 1.0 / std::abs(params.delta_omega))
        return ResolutionStatus::ShiftConditionViolated;
    if (scaled > params.tau)
        return ResolutionStatus::EnvelopeConditionViolated;
    return ResolutionStatus::Ok;
}

}  // namespace hombeat
