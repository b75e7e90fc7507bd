#include "hombeat/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hombeat/errors.hpp"

namespace hombeat {

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson with n (even) intervals on [a, b].
template <typename F>
double composite_simpson(F&& f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    double odd = 0.0, even = 0.0;
    for (long i = 1; i < n; i += 2) odd += f(a + h * static_cast<double>(i));
    for (long i = 2; i < n; i += 2) even += f(a + h * static_cast<double>(i));
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

}  // namespace

const char* to_string(FisherMethod m) {
    switch (m) {
        case FisherMethod::ClosedFormNuOne: return "closed_form_nu_one";
        case FisherMethod::QuadratureGaussian: return "quadrature_gaussian";
        case FisherMethod::AsymptoticLargeShift: return "asymptotic_large_shift";
        case FisherMethod::NonResolvingGaussian: return "non_resolving_gaussian";
        case FisherMethod::QuantumBound: return "quantum_bound";
    }
    return "unknown";
}

void QuadratureSpec::validate() const {
    if (!(half_width_sigmas > 0.0))
        throw ConfigError("QuadratureSpec: half_width_sigmas must be positive");
    if (!(abs_tol_scale > 0.0))
        throw ConfigError("QuadratureSpec: abs_tol_scale must be positive");
    if (max_nodes < 8)
        throw ConfigError("QuadratureSpec: max_nodes must be at least 8");
}

double beta_nu(double xi, double nu) {
    const double s = nu * std::sin(xi);
    const double s2 = s * s;
    // 1 - nu^2 cos^2 = (1 - nu^2) + nu^2 sin^2, which avoids cancellation and
    // makes the nu = 1 removable singularity an exact 0/0.
    const double denom = (1.0 - nu) * (1.0 + nu) + s2;
    if (denom <= 0.0) return 1.0;  // nu = 1, sin(xi) = 0: limit value
    return s2 / denom;
}

double beta_mean(double nu) {
    return 1.0 - std::sqrt((1.0 - nu) * (1.0 + nu));
}

FisherReport qfi(double tau) {
    if (!std::isfinite(tau) || tau <= 0.0)
        throw ConfigError("qfi: tau must be positive, got " + std::to_string(tau));
    return {2.0 * tau * tau, FisherMethod::QuantumBound, 0, 0.0, false};
}

QfiTransform qfi_jacobian_transform(double tau) {
    if (!std::isfinite(tau) || tau <= 0.0)
        throw ConfigError("qfi_jacobian_transform: tau must be positive");
    QfiTransform out;
    const double h = 4.0 * tau * tau;
    out.h_single = {h, 0.0, 0.0, h};
    // J = 1/2 [[1, 1], [1, -1]]; compute J H J^T explicitly.
    const std::array<double, 4> j = {0.5, 0.5, 0.5, -0.5};
    std::array<double, 4> jh{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            jh[2 * r + c] = j[2 * r] * out.h_single[c] + j[2 * r + 1] * out.h_single[2 + c];
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.h_transformed[2 * r + c] = jh[2 * r] * j[2 * c] + jh[2 * r + 1] * j[2 * c + 1];
    return out;
}

double fi_contribution(double delta_t, const ModelParams& params) {
    return envelope_c(delta_t, params) * delta_t * delta_t *
           beta_nu(params.delta_omega * delta_t, params.nu);
}

FisherReport fi_resolving(const ModelParams& params, const QuadratureSpec& spec) {
    params.validate();
    spec.validate();
    const double g2 = params.gamma * params.gamma;
    const double h_bound = 2.0 * params.tau * params.tau;

    if (params.nu == 1.0)
        return {g2 * h_bound, FisherMethod::ClosedFormNuOne, 0, 0.0, false};

    const double half_width = spec.half_width_sigmas * std::sqrt(2.0) * params.tau;
    // Initial step resolves the oscillation period pi/|delta_omega| and the
    // envelope scale tau, whichever is finer.
    double h0 = params.tau / 32.0;
    if (params.delta_omega != 0.0)
        h0 = std::min(h0, kPi / (16.0 * std::abs(params.delta_omega)));

    long n = 2;
    while (n < 2.0 * half_width / h0) n *= 2;

    const auto integrand = [&](double t) { return fi_contribution(t, params); };
    const double tol = spec.abs_tol_scale * h_bound;

    double coarse = composite_simpson(integrand, -half_width, half_width, n);
    long nodes = n + 1;
    while (true) {
        n *= 2;
        const double fine = composite_simpson(integrand, -half_width, half_width, n);
        nodes += n + 1;
        const double est = std::abs(fine - coarse) / 15.0;
        if (est < tol)
            return {g2 * fine, FisherMethod::QuadratureGaussian, nodes, g2 * est, false};
        if (nodes > spec.max_nodes)
            throw QuadratureError(
                "fi_resolving: quadrature did not converge (nodes=" + std::to_string(nodes) +
                    ", est_abs_error=" + std::to_string(est) + ", tol=" + std::to_string(tol) + ")",
                nodes, est);
        coarse = fine;
    }
}

FisherReport fi_asymptotic(const ModelParams& params) {
    params.validate();
    const double g2 = params.gamma * params.gamma;
    return {g2 * 2.0 * params.tau * params.tau * beta_mean(params.nu),
            FisherMethod::AsymptoticLargeShift, 0, 0.0, false};
}

FisherReport fi_nonresolving(const ModelParams& params) {
    params.validate();
    FisherReport report;
    report.method = FisherMethod::NonResolvingGaussian;
    report.gamma_ignored = params.gamma < 1.0;

    const double tdw = params.tau * params.delta_omega;
    const double h_bound = 2.0 * params.tau * params.tau;
    if (params.nu == 1.0 && std::abs(tdw) < 1e-6) {
        report.value = h_bound;  // 0/0 limit at the quantum bound
        return report;
    }
    // e^{2 tdw^2} - nu^2 = expm1(2 tdw^2) + (1 - nu^2), stable for small shifts.
    const double denom = std::expm1(2.0 * tdw * tdw) + (1.0 - params.nu) * (1.0 + params.nu);
    report.value = 4.0 * params.nu * params.nu * params.tau * params.tau * tdw * tdw / denom;
    return report;
}

double crlb_sigma(const FisherReport& fisher, long n) {
    if (n < 1) throw ConfigError("crlb_sigma: n must be at least 1");
    if (!(fisher.value > 0.0))
        throw IdentifiabilityError("crlb_sigma: parameter not identifiable under this configuration (F = 0)");
    return 1.0 / std::sqrt(static_cast<double>(n) * fisher.value);
}

}  // namespace hombeat
