#include "hombeat/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "hombeat/batch_io.hpp"
#include "hombeat/errors.hpp"
#include "hombeat/estimator.hpp"
#include "hombeat/fisher.hpp"
#include "hombeat/rng.hpp"
#include "hombeat/text_io.hpp"

namespace hombeat {

using nlohmann::json;

namespace {

// Numeric output table; cells keep their JSON type so the CSV and JSON
// emitters format integers and doubles consistently.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
};

std::string cell_to_csv(const json& cell) {
    if (cell.is_number_float()) return format_double(cell.get<double>());
    if (cell.is_string()) return cell.get<std::string>();
    return cell.dump();
}

std::string table_to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out.push_back(',');
        out += t.columns[c];
    }
    out.push_back('\n');
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out.push_back(',');
            out += cell_to_csv(row[c]);
        }
        out.push_back('\n');
    }
    return out;
}

json table_to_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj;
        for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    return rows;
}

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Minimal line plot: one polyline per series, framed axes, min/max ticks.
std::string polyline_svg(const std::string& title, const std::string& x_label,
                         const std::string& y_label, const std::vector<SvgSeries>& series) {
    constexpr int kW = 800, kH = 500, kL = 80, kR = 180, kT = 40, kB = 60;
    constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                        "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const auto px = [&](double x) {
        return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR);
    };
    const auto py = [&](double y) {
        return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                      std::to_string(kW) + " " + std::to_string(kH) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(kW / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           title + "</text>\n";
    svg += "<rect x=\"" + std::to_string(kL) + "\" y=\"" + std::to_string(kT) + "\" width=\"" +
           std::to_string(kW - kL - kR) + "\" height=\"" + std::to_string(kH - kT - kB) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string((kL + kW - kR) / 2) + "\" y=\"" + std::to_string(kH - 18) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"" + std::to_string((kT + kH - kB) / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
           std::to_string((kT + kH - kB) / 2) + ")\">" + y_label + "</text>\n";
    svg += "<text x=\"" + std::to_string(kL) + "\" y=\"" + std::to_string(kH - kB + 18) +
           "\" font-size=\"11\">" + tick_label(xmin) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kW - kR) + "\" y=\"" + std::to_string(kH - kB + 18) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(xmax) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kL - 6) + "\" y=\"" + std::to_string(kH - kB) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(ymin) + "</text>\n";
    svg += "<text x=\"" + std::to_string(kL - 6) + "\" y=\"" + std::to_string(kT + 10) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(ymax) + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % std::size(kPalette)];
        std::string points;
        const auto flush_polyline = [&]() {
            if (points.empty()) return;
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush_polyline();
                continue;
            }
            points += tick_label(px(s.x[i])) + "," + tick_label(py(s.y[i])) + " ";
        }
        flush_polyline();
        const int ly = kT + 16 + 16 * static_cast<int>(si);
        svg += "<line x1=\"" + std::to_string(kW - kR + 10) + "\" y1=\"" + std::to_string(ly - 4) +
               "\" x2=\"" + std::to_string(kW - kR + 34) + "\" y2=\"" + std::to_string(ly - 4) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + std::to_string(kW - kR + 40) + "\" y=\"" + std::to_string(ly) +
               "\" font-size=\"12\">" + s.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

class CommandWriter {
public:
    CommandWriter(const char* command, const ScenarioConfig& cfg)
        : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
        manifest_["command"] = command;
        manifest_["version"] = kVersion;
        manifest_["seed"] = cfg.seed;
        manifest_["config"] = json::parse(scenario_to_json_text(cfg));
    }

    json& manifest() { return manifest_; }

    void write_table(const std::string& stem, const Table& table) {
        write(stem + ".csv", table_to_csv(table));
        if (cfg_.format == OutputFormat::Json)
            write(stem + ".json", table_to_json(table).dump(2) + "\n");
    }

    void write_svg(const std::string& stem, const std::string& title, const std::string& x_label,
                   const std::string& y_label, const std::vector<SvgSeries>& series) {
        if (cfg_.format == OutputFormat::Svg)
            write(stem + ".svg", polyline_svg(title, x_label, y_label, series));
    }

    void write(const std::string& name, const std::string& content) {
        const auto path = cfg_.output_dir / name;
        write_file_atomic(path, content);
        outcome_.files.push_back(path);
    }

    // timings_ms is diagnostic only; every other manifest field is
    // deterministic for a fixed config+seed.
    CommandOutcome finish(const std::string& manifest_name) {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        manifest_["timings_ms"] = {
            {"total", std::chrono::duration<double, std::milli>(elapsed).count()}};
        write(manifest_name, manifest_.dump(2) + "\n");
        return std::move(outcome_);
    }

    CommandOutcome& outcome() { return outcome_; }

private:
    const ScenarioConfig& cfg_;
    json manifest_;
    CommandOutcome outcome_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return xs;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    const double ratio = hi / lo;
    for (int i = 0; i < n; ++i)
        xs[i] = lo * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
    return xs;
}

// Effective estimator settings for the Monte-Carlo sweep. The search domain
// must cover the swept shifts with margin; the grid default keeps the scan
// affordable while staying far below the anti-aliasing limit.
EstimatorConfig sweep_estimator_config(const ScenarioConfig& cfg) {
    EstimatorConfig ec;
    const double max_tdw = *std::max_element(cfg.sweep.tau_domega.begin(),
                                             cfg.sweep.tau_domega.end());
    ec.omega_max = cfg.omega_max > 0.0 ? cfg.omega_max
                                       : std::max(12.0, 4.0 * max_tdw) / cfg.model.tau;
    ec.coarse_grid_points = cfg.coarse_grid_points > 0 ? cfg.coarse_grid_points : 512;
    ec.refine_tol = cfg.refine_tol;
    ec.assumed_params = cfg.model;
    return ec;
}

}  // namespace

CommandOutcome cmd_density(const ScenarioConfig& cfg) {
    cfg.validate();
    CommandWriter out("density", cfg);
    const ModelParams& p = cfg.model;

    Table t{{"delta_t", "p_bunch", "p_coinc", "envelope"}, {}};
    SvgSeries bunch{"bunch", {}, {}}, coinc{"coincidence", {}, {}}, env{"envelope", {}, {}};
    for (double dt : linspace(-6.0 * p.tau, 6.0 * p.tau, cfg.curve_points)) {
        const double pb = density_dt(EventClass::Bunch, dt, p);
        const double pc = density_dt(EventClass::Coincidence, dt, p);
        const double c = envelope_c(dt, p);
        t.rows.push_back({dt, pb, pc, c});
        bunch.x.push_back(dt);
        bunch.y.push_back(pb);
        coinc.x.push_back(dt);
        coinc.y.push_back(pc);
        env.x.push_back(dt);
        env.y.push_back(c);
    }
    out.write_table("density", t);
    out.write_svg("density", "Two-photon delay densities", "delta_t (ns)", "density (1/ns)",
                  {bunch, coinc, env});
    out.manifest()["grid"] = {{"delta_t_min", -6.0 * p.tau},
                              {"delta_t_max", 6.0 * p.tau},
                              {"points", cfg.curve_points}};
    return out.finish("density_manifest.json");
}

CommandOutcome cmd_contribution(const ScenarioConfig& cfg) {
    cfg.validate();
    CommandWriter out("contribution", cfg);
    std::vector<SvgSeries> series;
    json files = json::array();

    for (double nu : cfg.contribution_nu) {
        ModelParams p = cfg.model;
        p.nu = nu;
        p.validate();
        Table t{{"delta_t", "f_nu", "envelope_bound"}, {}};
        SvgSeries s{"nu=" + format_double(nu), {}, {}};
        for (double dt : linspace(-6.0 * p.tau, 6.0 * p.tau, cfg.curve_points)) {
            const double f = fi_contribution(dt, p);
            const double bound = nu * nu * envelope_c(dt, p) * dt * dt;
            t.rows.push_back({dt, f, bound});
            s.x.push_back(dt);
            s.y.push_back(f);
        }
        const std::string stem = "contribution_nu_" + format_double(nu);
        out.write_table(stem, t);
        files.push_back(stem + ".csv");
        series.push_back(std::move(s));
    }
    out.write_svg("contribution", "Fisher-information contribution per delay", "delta_t (ns)",
                  "f (1/ns)", series);
    out.manifest()["nu_values"] = cfg.contribution_nu;
    out.manifest()["tables"] = files;
    return out.finish("contribution_manifest.json");
}

CommandOutcome cmd_fisher_compare(const ScenarioConfig& cfg) {
    cfg.validate();
    CommandWriter out("fisher_compare", cfg);
    const double tau = cfg.model.tau;
    const double h_bound = qfi(tau).value;

    Table t{{"inv_tau_domega", "nu", "fi_resolving", "fi_nonresolving", "qfi", "asymptote"}, {}};
    std::vector<SvgSeries> series;
    for (double nu : cfg.compare_nu)
        series.push_back({"resolving nu=" + format_double(nu), {}, {}});
    for (double nu : cfg.compare_nu)
        series.push_back({"non-resolving nu=" + format_double(nu), {}, {}});

    const auto grid = logspace(cfg.compare_inv_min, cfg.compare_inv_max, cfg.compare_points);
    for (double inv : grid) {
        for (std::size_t ni = 0; ni < cfg.compare_nu.size(); ++ni) {
            const double nu = cfg.compare_nu[ni];
            ModelParams p = cfg.model;
            p.nu = nu;
            p.delta_omega = 1.0 / (inv * tau);
            double fr = 0.0, fnr = 0.0;
            try {
                fr = fi_resolving(p).value;
                fnr = fi_nonresolving(p).value;
            } catch (const QuadratureError& e) {
                throw NumericalError("fisher-compare failed at inv_tau_domega=" +
                                     format_double(inv) + ", nu=" + format_double(nu) + ": " +
                                     e.what());
            }
            const double asym = fi_asymptotic(p).value;
            t.rows.push_back({inv, nu, fr, fnr, h_bound, asym});
            series[ni].x.push_back(inv);
            series[ni].y.push_back(fr);
            series[cfg.compare_nu.size() + ni].x.push_back(inv);
            series[cfg.compare_nu.size() + ni].y.push_back(fnr);
        }
    }
    out.write_table("fisher_compare", t);
    out.write_svg("fisher_compare", "Resolving vs non-resolving Fisher information",
                  "1/(tau delta_omega)", "F (ns^2)", series);
    out.manifest()["grid"] = {{"inv_min", cfg.compare_inv_min},
                              {"inv_max", cfg.compare_inv_max},
                              {"points", cfg.compare_points},
                              {"spacing", "log"}};
    return out.finish("fisher_compare_manifest.json");
}

CommandOutcome cmd_montecarlo(const ScenarioConfig& cfg) {
    cfg.validate();
    CommandWriter out("montecarlo", cfg);
    const EstimatorConfig ec = sweep_estimator_config(cfg);

    Table t{{"nu", "tau_domega", "n_events", "repetitions", "mean", "variance", "var_crb_ratio",
             "bias_fraction", "failed", "seed"},
            {}};
    json errors = json::array();
    std::vector<SvgSeries> series;

    std::uint64_t point_index = 0;
    for (double nu : cfg.sweep.nu) {
        for (double tdw : cfg.sweep.tau_domega) {
            SvgSeries s{"nu=" + format_double(nu) + " tdw=" + format_double(tdw), {}, {}};
            for (long n : cfg.sweep.n_events) {
                ModelParams p = cfg.model;
                p.nu = nu;
                p.delta_omega = tdw / p.tau;
                const std::uint64_t point_seed = derive_seed(cfg.seed, point_index++);
                try {
                    const MonteCarloSummary mc =
                        monte_carlo(p, n, cfg.repetitions, ec, point_seed, cfg.threads);
                    t.rows.push_back({nu, tdw, n, mc.repetitions, mc.mean_estimate, mc.variance,
                                      mc.variance_crb_ratio, mc.bias_fraction, mc.failed,
                                      mc.seed});
                    s.x.push_back(static_cast<double>(n));
                    s.y.push_back(mc.variance_crb_ratio);
                } catch (const NumericalError& e) {
                    const std::string msg = "sweep point nu=" + format_double(nu) +
                                            " tau_domega=" + format_double(tdw) +
                                            " n_events=" + std::to_string(n) + ": " + e.what();
                    errors.push_back(msg);
                    out.outcome().warnings.push_back(msg);
                    out.outcome().numerical_failure = true;
                }
            }
            series.push_back(std::move(s));
        }
    }
    out.write_table("montecarlo", t);
    out.write_svg("montecarlo", "MLE variance / Cramer-Rao bound", "n_events", "ratio", series);
    out.manifest()["estimator_effective"] = {{"omega_max", ec.omega_max},
                                             {"coarse_grid_points", ec.coarse_grid_points},
                                             {"refine_tol", ec.effective_refine_tol()}};
    out.manifest()["errors"] = errors;
    return out.finish("montecarlo_manifest.json");
}

CommandOutcome cmd_sample(const ScenarioConfig& cfg) {
    cfg.validate();
    CommandWriter out("sample", cfg);
    SamplerConfig sc{cfg.model, cfg.n_events, cfg.seed, cfg.quantization, cfg.keep_uninformative};

    if (cfg.quantization) {
        // advisory only: a too-coarse time resolution washes out the fringe
        // but the batch is still drawn as configured
        const ResolutionStatus status = resolution_check(cfg.model, *cfg.quantization);
        const char* name = status == ResolutionStatus::Ok ? "ok"
                           : status == ResolutionStatus::ShiftConditionViolated
                               ? "shift_condition_violated"
                               : "envelope_condition_violated";
        out.manifest()["resolution_check"] = name;
        if (status != ResolutionStatus::Ok)
            out.outcome().warnings.push_back(
                std::string("time resolution check: ") + name + " (quantization " +
                format_double(*cfg.quantization) + " ns vs tau " + format_double(cfg.model.tau) +
                " ns, delta_omega " + format_double(cfg.model.delta_omega) + " rad/ns)");
    }

    const SampleBatch batch = draw_batch(sc);
    out.write("batch.csv", batch_to_csv(batch));
    out.manifest()["counts"] = {{"zero_photon", batch.counts.zero_photon},
                                {"one_photon", batch.counts.one_photon},
                                {"bunch", batch.counts.bunch},
                                {"coincidence", batch.counts.coincidence}};
    return out.finish("sample_manifest.json");
}

CommandOutcome cmd_estimate(const ScenarioConfig& cfg, const std::filesystem::path& input_csv) {
    cfg.validate();
    CommandWriter out("estimate", cfg);
    const SampleBatch batch = read_batch_csv(input_csv);

    EstimatorConfig ec;
    ec.assumed_params = cfg.model;
    SamplerConfig like_sampler;
    like_sampler.params = cfg.model;
    like_sampler.quantization = cfg.quantization;
    ec.omega_max = cfg.omega_max > 0.0 ? cfg.omega_max
                                       : EstimatorConfig::default_omega_max(like_sampler);
    ec.coarse_grid_points = cfg.coarse_grid_points > 0 ? cfg.coarse_grid_points : 2048;
    ec.refine_tol = cfg.refine_tol;

    const EstimationResult r = mle(batch, ec);

    json result = {{"omega_hat", r.omega_hat},
                   {"log_likelihood", r.log_likelihood},
                   {"n_informative", r.n_informative},
                   {"boundary_flag", r.boundary_flag},
                   {"input", input_csv.string()},
                   {"assumed",
                    {{"tau", cfg.model.tau},
                     {"nu", cfg.model.nu},
                     {"gamma", cfg.model.gamma}}},
                   {"estimator",
                    {{"omega_max", ec.omega_max},
                     {"coarse_grid_points", ec.coarse_grid_points},
                     {"refine_tol", ec.effective_refine_tol()}}},
                   {"version", kVersion}};
    out.write("estimate.json", result.dump(2) + "\n");
    return out.finish("estimate_manifest.json");
}

}  // namespace hombeat
