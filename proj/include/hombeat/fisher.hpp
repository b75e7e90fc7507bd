#pragma once

#include <array>
#include <cstdint>

#include "hombeat/model.hpp"

namespace hombeat {

enum class FisherMethod : std::uint8_t {
    ClosedFormNuOne,      // nu = 1: F = 2 gamma^2 tau^2, no quadrature
    QuadratureGaussian,   // adaptive Simpson of the Gaussian-envelope integrand
    AsymptoticLargeShift, // tau |delta_omega| >> 1 closed form
    NonResolvingGaussian, // bunching/coincidence counting without time tags
    QuantumBound,         // quantum Fisher information 2 tau^2
};

const char* to_string(FisherMethod m);

// A Fisher-information value with provenance, so experiment outputs can be
// audited for which computation path produced them.
struct FisherReport {
    double value = 0.0;  // ns^2
    FisherMethod method = FisherMethod::QuadratureGaussian;
    long quadrature_nodes = 0;    // total integrand evaluations (0 for closed forms)
    double est_abs_error = 0.0;   // Richardson error estimate (0 for closed forms)
    bool gamma_ignored = false;   // non-resolving path called with gamma < 1
};

// Adaptive composite-Simpson controls for the Fisher integral. The support
// is [-L, L] with L = half_width_sigmas * sqrt(2) * tau (the delay std dev is
// sqrt(2) tau); the initial step resolves the faster of the oscillation and
// envelope scales; refinement doubles the node count until the Richardson
// estimate drops below abs_tol_scale * 2 tau^2 or max_nodes is exceeded.
struct QuadratureSpec {
    double half_width_sigmas = 12.0;
    double abs_tol_scale = 1e-8;
    long max_nodes = 1L << 22;

    void validate() const;
};

// beta_nu(xi) = nu^2 sin^2(xi) / (1 - nu^2 cos^2(xi)), the pi-periodic weight
// in the Fisher integrand. The nu = 1, xi = k pi removable singularity is
// defined by its limit, 1. Range [0, nu^2].
double beta_nu(double xi, double nu);

// Period average of beta_nu: 1 - sqrt(1 - nu^2).
double beta_mean(double nu);

// Quantum Fisher information for the frequency shift: H = 2 tau^2.
FisherReport qfi(double tau);

// Intermediate matrices of the (omega_1, omega_2) -> (omega_sum, shift)
// Jacobian transform, computed by explicit 2x2 arithmetic as a self-check:
// h_single should be 4 tau^2 I and h_transformed = J h_single J^T = 2 tau^2 I.
struct QfiTransform {
    std::array<double, 4> h_single{};       // row-major H(omega_1, omega_2)
    std::array<double, 4> h_transformed{};  // row-major H(omega_sum, delta_omega)
};
QfiTransform qfi_jacobian_transform(double tau);

// Per-delay contribution f(dt) = C(dt) dt^2 beta_nu(delta_omega dt) to the
// Fisher information (gamma^2 excluded; it multiplies the integral).
double fi_contribution(double delta_t, const ModelParams& params);

// Fisher information of the time-resolving measurement,
//   F = gamma^2 \int C(t) t^2 beta_nu(delta_omega t) dt.
// Closed form 2 gamma^2 tau^2 at nu = 1; adaptive quadrature otherwise.
// Throws QuadratureError if the tolerance cannot be reached.
FisherReport fi_resolving(const ModelParams& params, const QuadratureSpec& spec = {});

// Large-shift limit gamma^2 (1 - sqrt(1 - nu^2)) 2 tau^2.
FisherReport fi_asymptotic(const ModelParams& params);

// Fisher information of the non-resolving (bunch/coincidence counting)
// measurement: 4 nu^2 tau^4 delta_omega^2 / (e^{2 tau^2 delta_omega^2} - nu^2).
// Stated for unit detector efficiency; gamma < 1 sets the gamma_ignored flag.
FisherReport fi_nonresolving(const ModelParams& params);

// Cramer-Rao standard-deviation bound 1/sqrt(n F). Throws
// IdentifiabilityError if the Fisher information is zero.
double crlb_sigma(const FisherReport& fisher, long n);

}  // namespace hombeat
