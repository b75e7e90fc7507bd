#include <doctest.h>

#include <cmath>

#include "hombeat/errors.hpp"
#include "hombeat/model.hpp"
#include "support/oracles.hpp"

using namespace hombeat;
using doctest::Approx;

namespace {
ModelParams make(double tau, double nu, double gamma, double delta_omega) {
    return {tau, nu, gamma, delta_omega, Envelope::Gaussian};
}
}  // namespace

TEST_CASE("envelope: peak, tails and frozen value") {
    const ModelParams p = make(1.0, 1.0, 1.0, 0.0);
    CHECK(envelope_c(0.0, p) == Approx(0.28209479177387814).epsilon(1e-15));
    CHECK(envelope_c(2.0, p) == Approx(0.10377687435514868).epsilon(1e-14));
    CHECK(envelope_c(80.0, p) == 0.0);
    CHECK(envelope_c(-80.0, p) == 0.0);
    // even in dt
    for (double dt : {0.1, 0.7, 2.3, 5.0})
        CHECK(envelope_c(dt, p) == envelope_c(-dt, p));
}

TEST_CASE("envelope: unit mass for several tau") {
    for (double tau : {0.5, 1.0, 3.0}) {
        const ModelParams p = make(tau, 1.0, 1.0, 0.0);
        const double mass =
            test::simpson([&](double t) { return envelope_c(t, p); }, -20.0 * tau, 20.0 * tau,
                          1 << 14);
        CHECK(mass == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("joint two-time law: HOM dip, nu=0 limit, frozen value, swap symmetry") {
    CHECK(joint_density_t1t2(0.0, 0.0, EventClass::Coincidence, make(1, 1, 1, 5)) == 0.0);

    const ModelParams dist = make(1.0, 0.0, 1.0, 3.0);
    for (double t1 : {-1.0, 0.0, 0.4})
        for (double t2 : {-0.5, 0.2, 1.3}) {
            const double base =
                0.5 * temporal_intensity(t1, dist) * temporal_intensity(t2, dist);
            CHECK(joint_density_t1t2(t1, t2, EventClass::Bunch, dist) == Approx(base));
            CHECK(joint_density_t1t2(t1, t2, EventClass::Coincidence, dist) == Approx(base));
        }

    const ModelParams p = make(1.0, 0.7, 1.0, 3.0);
    CHECK(joint_density_t1t2(0.0, 0.5, EventClass::Bunch, p) ==
          Approx(0.073704228847487469).epsilon(1e-14));

    for (double t1 : {-2.0, 0.3})
        for (double t2 : {-0.7, 1.9})
            for (EventClass cls : {EventClass::Bunch, EventClass::Coincidence})
                CHECK(joint_density_t1t2(t1, t2, cls, p) ==
                      Approx(joint_density_t1t2(t2, t1, cls, p)).epsilon(1e-15));
}

TEST_CASE("delay density: endpoints and frozen value") {
    const ModelParams ideal = make(1.0, 1.0, 1.0, 2.0);
    CHECK(density_dt(EventClass::Bunch, 0.0, ideal) == Approx(envelope_c(0.0, ideal)).epsilon(1e-15));
    CHECK(density_dt(EventClass::Coincidence, 0.0, ideal) == 0.0);

    const ModelParams p = make(1.0, 0.7, 1.0, 3.0);
    CHECK(density_dt(EventClass::Bunch, 0.5, p) == Approx(0.13906272908053989).epsilon(1e-14));
}

TEST_CASE("delay density: normalization over both classes") {
    for (double nu : {0.0, 0.3, 0.7, 1.0})
        for (double tau : {0.5, 1.0, 3.0})
            for (double tdw : {0.0, 1.0, 4.0, 10.0}) {
                const ModelParams p = make(tau, nu, 1.0, tdw / tau);
                const auto sum_classes = [&](double dt) {
                    return density_dt(EventClass::Bunch, dt, p) +
                           density_dt(EventClass::Coincidence, dt, p);
                };
                const double mass =
                    test::simpson(sum_classes, -20.0 * tau, 20.0 * tau, 1 << 16);
                CHECK(std::abs(mass - 1.0) < 1e-9);
            }
}

TEST_CASE("delay density: marginalizing the two-time law over tau_tot") {
    for (double nu : {0.0, 0.7, 1.0})
        for (double tdw : {0.0, 1.0, 4.0})
            for (double dt : {0.0, 0.3, 1.0, 2.5})
                for (EventClass cls : {EventClass::Bunch, EventClass::Coincidence}) {
                    const ModelParams p = make(1.0, nu, 1.0, tdw);
                    const double direct = density_dt(cls, dt, p);
                    const double via_joint = test::marginalized_density(cls, dt, p);
                    CHECK(std::abs(via_joint - direct) <= 1e-6 * std::max(direct, 1e-30));
                }
    // non-unit tau spot check
    const ModelParams p2 = make(2.0, 0.6, 1.0, 1.5);
    const double direct = density_dt(EventClass::Coincidence, 0.8, p2);
    CHECK(test::marginalized_density(EventClass::Coincidence, 0.8, p2) ==
          Approx(direct).epsilon(1e-7));
}

TEST_CASE("delay density: parity, class symmetry at nu=0, nonnegativity") {
    const ModelParams p = make(1.0, 0.8, 1.0, 2.7);
    for (double dt : {0.0, 0.2, 1.1, 3.3}) {
        ModelParams flipped = p;
        flipped.delta_omega = -p.delta_omega;
        for (EventClass cls : {EventClass::Bunch, EventClass::Coincidence}) {
            CHECK(density_dt(cls, dt, p) == density_dt(cls, -dt, p));
            CHECK(density_dt(cls, dt, p) == density_dt(cls, dt, flipped));
        }
    }

    const ModelParams even = make(1.0, 0.0, 1.0, 2.7);
    for (double dt : {0.0, 0.4, 1.7})
        CHECK(density_dt(EventClass::Bunch, dt, even) ==
              density_dt(EventClass::Coincidence, dt, even));

    for (double nu : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double dt = -8.0; dt <= 8.0; dt += 0.05)
            for (EventClass cls : {EventClass::Bunch, EventClass::Coincidence})
                CHECK(density_dt(cls, dt, make(1.0, nu, 1.0, 4.0)) >= 0.0);
}

TEST_CASE("outcome ladder: probabilities and unit total mass") {
    CHECK(prob_zero_photon(make(1, 1, 1, 0)) == 0.0);
    CHECK(prob_one_photon(make(1, 1, 1, 0)) == 0.0);
    CHECK(prob_zero_photon(make(1, 1, 0, 0)) == 1.0);

    const ModelParams half = make(1.0, 0.7, 0.5, 3.0);
    CHECK(prob_zero_photon(half) == 0.25);
    CHECK(prob_one_photon(half) == 0.5);
    CHECK(outcome_probability(DetectionOutcome::zero_photon(), half) == 0.25);
    CHECK(outcome_probability(DetectionOutcome::one_photon(), half) == 0.5);
    CHECK(outcome_probability(DetectionOutcome::two_photon(EventClass::Bunch, 0.5), half) ==
          Approx(0.25 * density_dt(EventClass::Bunch, 0.5, half)).epsilon(1e-15));

    for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const ModelParams p = make(1.0, 0.7, gamma, 3.0);
        const auto two_photon_density = [&](double dt) {
            return outcome_probability(DetectionOutcome::two_photon(EventClass::Bunch, dt), p) +
                   outcome_probability(DetectionOutcome::two_photon(EventClass::Coincidence, dt), p);
        };
        const double two_mass = test::simpson(two_photon_density, -20.0, 20.0, 1 << 14);
        const double total = prob_zero_photon(p) + prob_one_photon(p) + two_mass;
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("resolution check") {
    CHECK(resolution_check(make(1.0, 1.0, 1.0, 10.0), 0.01, 10.0) == ResolutionStatus::Ok);
    CHECK(resolution_check(make(1.0, 1.0, 1.0, 10.0), 1.0, 10.0) ==
          ResolutionStatus::ShiftConditionViolated);
    CHECK(resolution_check(make(0.005, 1.0, 1.0, 1.0), 0.001, 10.0) ==
          ResolutionStatus::EnvelopeConditionViolated);
    // zero shift: only the envelope condition applies
    CHECK(resolution_check(make(1.0, 1.0, 1.0, 0.0), 0.05, 10.0) == ResolutionStatus::Ok);
    CHECK_THROWS_AS(resolution_check(make(1, 1, 1, 1), 0.01, 1.0), ConfigError);
    CHECK_THROWS_AS(resolution_check(make(1, 1, 1, 1), 0.01, 0.5), ConfigError);
    CHECK_THROWS_AS(resolution_check(make(1, 1, 1, 1), -0.01, 10.0), ConfigError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make(0.0, 1, 1, 0).validate(), ConfigError);
    CHECK_THROWS_AS(make(-1.0, 1, 1, 0).validate(), ConfigError);
    CHECK_THROWS_AS(make(1.0, 1.2, 1, 0).validate(), ConfigError);
    CHECK_THROWS_AS(make(1.0, -0.1, 1, 0).validate(), ConfigError);
    CHECK_THROWS_AS(make(1.0, 1, 1.5, 0).validate(), ConfigError);
    CHECK_THROWS_AS(make(1.0, 1, 1, std::nan("")).validate(), ConfigError);
    CHECK_NOTHROW(make(1.0, 0.0, 0.0, -5.0).validate());
}
