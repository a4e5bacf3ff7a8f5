#pragma once

#include <string>
#include <vector>

#include "phsf/config.hpp"

namespace phsf {

inline constexpr const char* kToolName = "phsf";
inline constexpr const char* kToolVersion = "0.1.0";

/// Run provenance: the fully resolved configuration plus tool metadata.
/// Every output file references its manifest; re-running any subcommand from
/// the manifest reproduces the data files bit-exactly.
struct RunManifest {
    std::string subcommand;
    RunConfig config;
    std::string timestamp; // ISO 8601 UTC
    std::vector<std::string> outputs;
};

RunManifest make_manifest(const std::string& subcommand, const RunConfig& config);

/// JSON serialization; embeds serialize_config(config) for bit-exact reruns.
std::string manifest_to_json(const RunManifest& manifest);

/// Extracts the embedded configuration from a manifest JSON document.
/// Throws ConfigError on malformed input.
RunConfig config_from_manifest_json(const std::string& json_text);

} // namespace phsf
