#pragma once

#include <cstdint>

namespace hombeat {

// Envelope family for the time-delay distribution C(dt). Only the Gaussian
// case is wired in; the enum keeps file formats and configs explicit.
enum class Envelope : std::uint8_t { Gaussian };

// Physical configuration of the two-photon measurement. Every density in
// this library is a pure function of these parameters.
//
// Units: time in ns, angular frequency in rad/ns.
struct ModelParams {
    double tau = 1.0;          // temporal-amplitude std dev of each photon, ns (> 0)
    double nu = 1.0;           // indistinguishability in all non-time DOFs, in [0,1]
    double gamma = 1.0;        // per-detector efficiency, in [0,1]
    double delta_omega = 0.0;  // frequency shift omega_2 - omega_1, rad/ns (the estimand)
    Envelope envelope = Envelope::Gaussian;

    // Throws ConfigError if any field is out of range or non-finite.
    void validate() const;
};

// Two-photon event class at the beam splitter output: both photons on the
// same port (Bunch) or on different ports (Coincidence).
enum class EventClass : std::uint8_t { Bunch, Coincidence };

// Sign factor alpha(X) in the outcome density: +1 for Bunch, -1 for Coincidence.
constexpr double class_sign(EventClass x) {
    return x == EventClass::Bunch ? 1.0 : -1.0;
}

enum class OutcomeKind : std::uint8_t { ZeroPhoton, OnePhoton, TwoPhoton };

// One experimental repetition. `cls` and `delta_t` are meaningful only for
// TwoPhoton; zero- and one-photon events carry no frequency information and
// no timestamp.
struct DetectionOutcome {
    OutcomeKind kind = OutcomeKind::ZeroPhoton;
    EventClass cls = EventClass::Bunch;
    double delta_t = 0.0;  // recorded detection delay, ns

    static DetectionOutcome zero_photon() { return {}; }
    static DetectionOutcome one_photon() { return {OutcomeKind::OnePhoton, EventClass::Bunch, 0.0}; }
    static DetectionOutcome two_photon(EventClass cls, double delta_t) {
        return {OutcomeKind::TwoPhoton, cls, delta_t};
    }

    friend bool operator==(const DetectionOutcome&, const DetectionOutcome&) = default;
};

// Gaussian beats envelope C(dt) = (4 pi tau^2)^(-1/2) exp(-dt^2 / (4 tau^2)).
// Normalized to 1 over the real line; even in dt. Units 1/ns.
double envelope_c(double delta_t, const ModelParams& params);

// Single-photon temporal intensity |psi(t)|^2: Gaussian with variance tau^2.
double temporal_intensity(double t, const ModelParams& params);

// Joint two-time density for detection at (t1, t2) with event class `cls`:
//   0.5 |psi(t1) psi(t2)|^2 (1 + nu alpha(X) cos(delta_omega (t2 - t1))).
// Symmetric under t1 <-> t2; sums over classes and integrates to 1. Units 1/ns^2.
double joint_density_t1t2(double t1, double t2, EventClass cls, const ModelParams& params);

// Time-delay outcome density P_nu(X, dt | delta_omega) =
//   C(dt)/2 (1 + nu alpha(X) cos(delta_omega dt)).
// Even in dt and in delta_omega; the class sum marginalizes to C(dt). Units 1/ns.
double density_dt(EventClass cls, double delta_t, const ModelParams& params);

// Detector-efficiency outcome ladder: P0 = (1-gamma)^2, P1 = 2 gamma (1-gamma);
// two-photon outcomes carry density gamma^2 P_nu(X, dt | delta_omega).
double prob_zero_photon(const ModelParams& params);
double prob_one_photon(const ModelParams& params);

// Probability (Zero/One) or density in dt (TwoPhoton) of a single outcome.
double outcome_probability(const DetectionOutcome& outcome, const ModelParams& params);

enum class ResolutionStatus : std::uint8_t {
    Ok,
    ShiftConditionViolated,     // margin * delta_t_resolution > 1/|delta_omega|
    EnvelopeConditionViolated,  // margin * delta_t_resolution > tau
};

// Advisory check that the detector time resolution is fine enough to erase
// the photons' temporal distinguishability. "Much smaller" is read as a
// margin factor (> 1, default 10). Does not block anything downstream.
ResolutionStatus resolution_check(const ModelParams& params, double delta_t_resolution,
                                  double margin = 10.0);

}  // namespace hombeat
