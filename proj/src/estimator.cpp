#include "hombeat/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "hombeat/errors.hpp"
#include "hombeat/fisher.hpp"
#include "hombeat/rng.hpp"

namespace hombeat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// omega-independent part of the log-likelihood: detector-ladder terms and the
// per-event envelope factor log[gamma^2 C(dt)/2]. -inf when the batch is
// impossible under the assumed parameters for every candidate.
double constant_terms(const SampleBatch& batch, const ModelParams& assumed) {
    double total = 0.0;
    if (batch.counts.zero_photon > 0) {
        const double p0 = prob_zero_photon(assumed);
        if (p0 <= 0.0) return -kInf;
        total += static_cast<double>(batch.counts.zero_photon) * std::log(p0);
    }
    if (batch.counts.one_photon > 0) {
        const double p1 = prob_one_photon(assumed);
        if (p1 <= 0.0) return -kInf;
        total += static_cast<double>(batch.counts.one_photon) * std::log(p1);
    }
    const long n2 = batch.counts.two_photon();
    if (n2 > 0) {
        if (assumed.gamma <= 0.0) return -kInf;
        total += 2.0 * static_cast<double>(n2) * std::log(assumed.gamma);
        for (const auto& o : batch.outcomes)
            if (o.kind == OutcomeKind::TwoPhoton)
                total += std::log(0.5 * envelope_c(o.delta_t, assumed));
    }
    return total;
}

long require_informative(const SampleBatch& batch) {
    const long n2 = batch.counts.two_photon();
    if (n2 == 0)
        throw IdentifiabilityError(
            "parameter not identifiable from this batch: no two-photon events");
    return n2;
}

struct GoldenResult {
    double x;
    double value;
};

// Golden-section maximization on [a, b]; returns the best evaluated point.
template <typename F>
GoldenResult golden_max(F&& f, double a, double b, double tol) {
    constexpr double kRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2
    double x1 = b - kRatio * (b - a);
    double x2 = a + kRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    GoldenResult best = f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kRatio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kRatio * (b - a);
            f1 = f(x1);
        }
        const GoldenResult cand = f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
        if (cand.value > best.value) best = cand;
    }
    return best;
}

}  // namespace

void EstimatorConfig::validate() const {
    if (!std::isfinite(omega_max) || omega_max <= 0.0)
        throw ConfigError("EstimatorConfig: omega_max must be positive");
    if (coarse_grid_points < 2)
        throw ConfigError("EstimatorConfig: coarse_grid_points must be at least 2");
    if (!std::isfinite(refine_tol) || refine_tol < 0.0)
        throw ConfigError("EstimatorConfig: refine_tol must be nonnegative");
    assumed_params.validate();
}

double EstimatorConfig::effective_refine_tol() const {
    return refine_tol > 0.0 ? refine_tol : 1e-9 * omega_max;
}

double EstimatorConfig::default_omega_max(const SamplerConfig& sampler) {
    const double dt_eff = sampler.quantization.value_or(sampler.params.tau / 100.0);
    return std::numbers::pi / (4.0 * dt_eff);
}

LogLikelihoodValue log_likelihood(const SampleBatch& batch, double candidate_omega,
                                  const ModelParams& assumed) {
    require_informative(batch);
    const double constants = constant_terms(batch, assumed);
    if (constants == -kInf) return {-kInf, true};

    double sum = 0.0;
    for (const auto& o : batch.outcomes) {
        if (o.kind != OutcomeKind::TwoPhoton) continue;
        const double arg =
            assumed.nu * class_sign(o.cls) * std::cos(candidate_omega * o.delta_t);
        if (arg <= -1.0) return {-kInf, true};
        sum += std::log1p(arg);
    }
    return {sum + constants, false};
}

std::vector<double> log_likelihood_grid(const SampleBatch& batch, double omega0, double step,
                                        int count, const ModelParams& assumed) {
    require_informative(batch);
    if (count < 1) throw ConfigError("log_likelihood_grid: count must be at least 1");
    if (!(step > 0.0) && count > 1)
        throw ConfigError("log_likelihood_grid: step must be positive");

    std::vector<double> ll(count, 0.0);
    const double constants = constant_terms(batch, assumed);
    if (constants == -kInf) {
        std::fill(ll.begin(), ll.end(), -kInf);
        return ll;
    }

    // Per event, cos(omega dt) across the uniform grid is advanced by a
    // rotation; log calls are amortized by multiplying 16 beat factors per
    // grid point before taking one log.
    std::vector<double> prod(count, 1.0);
    int block = 0;
    const auto flush = [&]() {
        for (int g = 0; g < count; ++g) {
            ll[g] += std::log(prod[g]);
            prod[g] = 1.0;
        }
        block = 0;
    };

    for (const auto& o : batch.outcomes) {
        if (o.kind != OutcomeKind::TwoPhoton) continue;
        const double k = assumed.nu * class_sign(o.cls);
        const double cd = std::cos(step * o.delta_t);
        const double sd = std::sin(step * o.delta_t);
        double c = std::cos(omega0 * o.delta_t);
        double s = std::sin(omega0 * o.delta_t);
        for (int g = 0; g < count; ++g) {
            const double beat = 1.0 + k * c;
            prod[g] *= beat > 0.0 ? beat : 0.0;
            const double cn = c * cd - s * sd;
            s = s * cd + c * sd;
            c = cn;
        }
        if (++block == 16) flush();
    }
    if (block > 0) flush();
    for (int g = 0; g < count; ++g) ll[g] += constants;
    return ll;
}

EstimationResult mle(const SampleBatch& batch, const EstimatorConfig& config) {
    config.validate();
    const long n2 = require_informative(batch);

    double max_abs_dt = 0.0;
    for (const auto& o : batch.outcomes)
        if (o.kind == OutcomeKind::TwoPhoton)
            max_abs_dt = std::max(max_abs_dt, std::abs(o.delta_t));

    const int grid_points = config.coarse_grid_points;
    const double step = config.omega_max / static_cast<double>(grid_points - 1);

    // The likelihood oscillates in omega with period 2 pi / dt; a grid
    // coarser than half the fastest period can skip the global maximum.
    if (max_abs_dt > 0.0) {
        const double limit = std::numbers::pi / (2.0 * max_abs_dt);
        if (step >= limit) {
            const long needed = static_cast<long>(std::ceil(config.omega_max / limit)) + 1;
            throw ConfigError("mle: coarse grid spacing " + std::to_string(step) +
                              " rad/ns exceeds the anti-aliasing limit pi/(2 max|dt|) = " +
                              std::to_string(limit) + "; use at least " + std::to_string(needed) +
                              " grid points");
        }
    }

    const std::vector<double> grid_ll =
        log_likelihood_grid(batch, 0.0, step, grid_points, config.assumed_params);
    int best = 0;
    for (int g = 1; g < grid_points; ++g)
        if (grid_ll[g] > grid_ll[best]) best = g;

    const auto objective = [&](double omega) {
        return log_likelihood(batch, omega, config.assumed_params).value;
    };

    const double lo = std::max(0.0, (best - 1) * step);
    const double hi = std::min(config.omega_max, (best + 1) * step);
    GoldenResult refined = golden_max(objective, lo, hi, config.effective_refine_tol());

    // The winning grid point may beat the refined point in degenerate cases.
    const double grid_x = best * step;
    const double grid_v = objective(grid_x);
    if (grid_v > refined.value || (grid_v == refined.value && grid_x < refined.x))
        refined = {grid_x, grid_v};

    if (refined.value == -kInf)
        throw IdentifiabilityError(
            "mle: batch impossible under the assumed parameters for every candidate");

    EstimationResult result;
    result.omega_hat = refined.x;
    result.log_likelihood = refined.value;
    result.n_informative = n2;
    result.boundary_flag = refined.x <= step || refined.x >= config.omega_max - step;
    return result;
}

MonteCarloSummary monte_carlo(const ModelParams& params, long n_events, long repetitions,
                              const EstimatorConfig& config, std::uint64_t seed, int threads) {
    params.validate();
    if (n_events < 1) throw ConfigError("monte_carlo: n_events must be at least 1");
    if (repetitions < 2) throw ConfigError("monte_carlo: repetitions must be at least 2");

    EstimatorConfig cfg = config;
    cfg.assumed_params = params;  // tau, nu, gamma known to the estimator
    cfg.validate();

    const double fisher = fi_resolving(params).value;

    std::vector<double> estimates(repetitions, 0.0);
    std::vector<unsigned char> ok(repetitions, 0);

    const auto run_range = [&](long begin, long end, std::exception_ptr& eptr) {
        try {
            for (long r = begin; r < end; ++r) {
                SamplerConfig sc;
                sc.params = params;
                sc.n_events = n_events;
                sc.seed = derive_seed(seed, static_cast<std::uint64_t>(r));
                sc.keep_uninformative = false;
                const SampleBatch batch = draw_batch(sc);
                try {
                    estimates[r] = mle(batch, cfg).omega_hat;
                    ok[r] = 1;
                } catch (const IdentifiabilityError&) {
                    ok[r] = 0;
                }
            }
        } catch (...) {
            eptr = std::current_exception();
        }
    };

    int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(repetitions)));

    if (n_threads == 1) {
        std::exception_ptr eptr;
        run_range(0, repetitions, eptr);
        if (eptr) std::rethrow_exception(eptr);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n_threads);
        const long chunk = (repetitions + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min(repetitions, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, begin, end, t] { run_range(begin, end, errors[t]); });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    MonteCarloSummary summary;
    summary.params = params;
    summary.n_events = n_events;
    summary.repetitions = repetitions;
    summary.seed = seed;

    long n_ok = 0;
    double mean = 0.0;
    for (long r = 0; r < repetitions; ++r)
        if (ok[r]) {
            ++n_ok;
            mean += estimates[r];
        }
    summary.failed = repetitions - n_ok;
    if (summary.failed * 100 > repetitions)
        throw NumericalError("monte_carlo: " + std::to_string(summary.failed) + " of " +
                             std::to_string(repetitions) +
                             " repetitions produced no informative events (>1%)");
    mean /= static_cast<double>(n_ok);

    double ss = 0.0;
    for (long r = 0; r < repetitions; ++r)
        if (ok[r]) {
            const double d = estimates[r] - mean;
            ss += d * d;
        }
    summary.mean_estimate = mean;
    summary.variance = n_ok > 1 ? ss / static_cast<double>(n_ok - 1) : 0.0;
    summary.variance_crb_ratio = summary.variance * static_cast<double>(n_events) * fisher;

    const double truth = std::abs(params.delta_omega);
    summary.bias_fraction = truth > 0.0 ? (mean - truth) / truth
                                        : std::numeric_limits<double>::quiet_NaN();
    return summary;
}

}  // namespace hombeat
