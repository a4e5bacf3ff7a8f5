#include "phsf/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "phsf/csv_io.hpp"

namespace phsf {

namespace {

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RunManifest make_manifest(const std::string& subcommand, const RunConfig& config) {
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config = config;
    manifest.timestamp = utc_now_iso8601();
    return manifest;
}

std::string manifest_to_json(const RunManifest& manifest) {
    nlohmann::json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["subcommand"] = manifest.subcommand;
    doc["timestamp"] = manifest.timestamp;
    doc["seed"] = manifest.config.sim.seed;
    doc["outputs"] = manifest.outputs;
    // The canonical config text is authoritative: feeding it back through any
    // subcommand reproduces the data files bit-exactly.
    doc["config_text"] = serialize_config(manifest.config);

    nlohmann::json params;
    params["n_agents"] = manifest.config.params.n_agents;
    params["ring_length"] = manifest.config.params.ring_length;
    params["alpha"] = manifest.config.params.alpha;
    params["beta"] = manifest.config.params.beta;
    params["gamma"] = manifest.config.params.gamma;
    params["sigma"] = manifest.config.params.sigma;
    params["u"] = manifest.config.params.u;
    doc["parameters"] = params;

    nlohmann::json sim;
    sim["dt"] = manifest.config.sim.dt;
    sim["t_end"] = manifest.config.sim.t_end;
    sim["record_every"] = manifest.config.sim.record_every;
    doc["sim"] = sim;

    nlohmann::json ens;
    ens["replicas"] = manifest.config.ensemble.replicas;
    ens["burn_in"] = manifest.config.ensemble.burn_in;
    ens["sample_stride"] = manifest.config.ensemble.sample_stride;
    doc["ensemble"] = ens;

    return doc.dump(2) + "\n";
}

RunConfig config_from_manifest_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!doc.contains("config_text") || !doc["config_text"].is_string())
        throw ConfigError("manifest lacks a config_text entry");
    return parse_config(doc["config_text"].get<std::string>());
}

} // namespace phsf
