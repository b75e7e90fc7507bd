#include "hombeat/scenario.hpp"

#include <set>

#include <json.hpp>

#include "hombeat/errors.hpp"
#include "hombeat/text_io.hpp"

namespace hombeat {

using nlohmann::json;

namespace {

void require_known_keys(const json& obj, const std::string& where,
                        const std::set<std::string>& known) {
    for (const auto& [key, _] : obj.items())
        if (!known.contains(key))
            throw ConfigError("config: unknown key '" + where + key + "'");
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for '" + std::string(key) + "': " + e.what());
    }
}

}  // namespace

OutputFormat format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "svg") return OutputFormat::Svg;
    throw ConfigError("config: format must be csv, json or svg, got '" + name + "'");
}

const char* to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Svg: return "svg";
    }
    return "?";
}

void ScenarioConfig::validate() const {
    model.validate();
    if (sweep.nu.empty() || sweep.tau_domega.empty() || sweep.n_events.empty())
        throw ConfigError("config: sweep lists must be non-empty");
    for (double nu : sweep.nu)
        if (nu < 0.0 || nu > 1.0) throw ConfigError("config: sweep nu values must lie in [0,1]");
    for (double tdw : sweep.tau_domega)
        if (!(tdw > 0.0)) throw ConfigError("config: sweep tau_domega values must be positive");
    for (long n : sweep.n_events)
        if (n < 1) throw ConfigError("config: sweep n_events values must be positive");
    if (n_events < 1) throw ConfigError("config: sampler n_events must be positive");
    if (quantization && !(*quantization > 0.0))
        throw ConfigError("config: quantization must be positive");
    if (omega_max < 0.0) throw ConfigError("config: omega_max must be nonnegative");
    if (coarse_grid_points < 0) throw ConfigError("config: coarse_grid_points must be nonnegative");
    if (refine_tol < 0.0) throw ConfigError("config: refine_tol must be nonnegative");
    if (repetitions < 2) throw ConfigError("config: repetitions must be at least 2");
    if (threads < 0) throw ConfigError("config: threads must be nonnegative");
    if (curve_points < 2) throw ConfigError("config: curve_points must be at least 2");
    if (contribution_nu.empty()) throw ConfigError("config: contribution_nu must be non-empty");
    if (compare_nu.empty()) throw ConfigError("config: compare_nu must be non-empty");
    if (compare_points < 2) throw ConfigError("config: compare_points must be at least 2");
    if (!(compare_inv_min > 0.0) || !(compare_inv_max > compare_inv_min))
        throw ConfigError("config: need 0 < compare_inv_min < compare_inv_max");
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    ScenarioConfig cfg;
    require_known_keys(root, "", {"model", "sweep", "sampler", "estimator", "montecarlo",
                                  "output_dir", "format", "figure"});

    if (root.contains("model")) {
        const json& m = root.at("model");
        require_known_keys(m, "model.", {"tau", "nu", "gamma", "delta_omega", "envelope"});
        read_field(m, "tau", cfg.model.tau);
        read_field(m, "nu", cfg.model.nu);
        read_field(m, "gamma", cfg.model.gamma);
        read_field(m, "delta_omega", cfg.model.delta_omega);
        if (m.contains("envelope")) {
            const auto name = m.at("envelope").get<std::string>();
            if (name != "gaussian")
                throw ConfigError("config: only the gaussian envelope is supported, got '" + name + "'");
        }
    }
    if (root.contains("sweep")) {
        const json& s = root.at("sweep");
        require_known_keys(s, "sweep.", {"nu", "tau_domega", "n_events"});
        read_field(s, "nu", cfg.sweep.nu);
        read_field(s, "tau_domega", cfg.sweep.tau_domega);
        read_field(s, "n_events", cfg.sweep.n_events);
    }
    if (root.contains("sampler")) {
        const json& s = root.at("sampler");
        require_known_keys(s, "sampler.",
                           {"n_events", "seed", "quantization", "keep_uninformative"});
        read_field(s, "n_events", cfg.n_events);
        read_field(s, "seed", cfg.seed);
        if (s.contains("quantization") && !s.at("quantization").is_null()) {
            double q = 0.0;
            read_field(s, "quantization", q);
            cfg.quantization = q;
        }
        read_field(s, "keep_uninformative", cfg.keep_uninformative);
    }
    if (root.contains("estimator")) {
        const json& e = root.at("estimator");
        require_known_keys(e, "estimator.", {"omega_max", "coarse_grid_points", "refine_tol"});
        read_field(e, "omega_max", cfg.omega_max);
        read_field(e, "coarse_grid_points", cfg.coarse_grid_points);
        read_field(e, "refine_tol", cfg.refine_tol);
    }
    if (root.contains("montecarlo")) {
        const json& m = root.at("montecarlo");
        require_known_keys(m, "montecarlo.", {"repetitions", "threads"});
        read_field(m, "repetitions", cfg.repetitions);
        read_field(m, "threads", cfg.threads);
    }
    if (root.contains("output_dir")) {
        std::string dir;
        read_field(root, "output_dir", dir);
        cfg.output_dir = dir;
    }
    if (root.contains("format"))
        cfg.format = format_from_string(root.at("format").get<std::string>());
    if (root.contains("figure")) {
        const json& f = root.at("figure");
        require_known_keys(f, "figure.",
                           {"curve_points", "contribution_nu", "compare_nu", "compare_points",
                            "compare_inv_min", "compare_inv_max"});
        read_field(f, "curve_points", cfg.curve_points);
        read_field(f, "contribution_nu", cfg.contribution_nu);
        read_field(f, "compare_nu", cfg.compare_nu);
        read_field(f, "compare_points", cfg.compare_points);
        read_field(f, "compare_inv_min", cfg.compare_inv_min);
        read_field(f, "compare_inv_max", cfg.compare_inv_max);
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    return scenario_from_json_text(read_file(path));
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
    json root;
    root["model"] = {{"tau", cfg.model.tau},
                     {"nu", cfg.model.nu},
                     {"gamma", cfg.model.gamma},
                     {"delta_omega", cfg.model.delta_omega},
                     {"envelope", "gaussian"}};
    root["sweep"] = {{"nu", cfg.sweep.nu},
                     {"tau_domega", cfg.sweep.tau_domega},
                     {"n_events", cfg.sweep.n_events}};
    root["sampler"] = {{"n_events", cfg.n_events},
                       {"seed", cfg.seed},
                       {"quantization", cfg.quantization ? json(*cfg.quantization) : json()},
                       {"keep_uninformative", cfg.keep_uninformative}};
    root["estimator"] = {{"omega_max", cfg.omega_max},
                         {"coarse_grid_points", cfg.coarse_grid_points},
                         {"refine_tol", cfg.refine_tol}};
    root["montecarlo"] = {{"repetitions", cfg.repetitions}, {"threads", cfg.threads}};
    root["output_dir"] = cfg.output_dir.string();
    root["format"] = to_string(cfg.format);
    root["figure"] = {{"curve_points", cfg.curve_points},
                      {"contribution_nu", cfg.contribution_nu},
                      {"compare_nu", cfg.compare_nu},
                      {"compare_points", cfg.compare_points},
                      {"compare_inv_min", cfg.compare_inv_min},
                      {"compare_inv_max", cfg.compare_inv_max}};
    return root.dump(2) + "\n";
}

}  // namespace hombeat
