#include "phsf/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "phsf/csv_io.hpp"

namespace phsf {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(long line_no, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line_no) + ": " + message);
}

double to_double(const std::string& value, long line_no) {
    try {
        return parse_double(value);
    } catch (const std::invalid_argument&) {
        fail(line_no, "expected a number, got '" + value + "'");
    }
}

long to_long(const std::string& value, long line_no) {
    long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end)
        fail(line_no, "expected an integer, got '" + value + "'");
    return out;
}

std::uint64_t to_seed(const std::string& value, long line_no) {
    std::uint64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end)
        fail(line_no, "expected a nonnegative 64-bit integer, got '" + value + "'");
    return out;
}

Eigen::VectorXd to_vector(const std::string& value, long line_no) {
    std::vector<double> entries;
    std::istringstream in(value);
    std::string token;
    while (std::getline(in, token, ',')) entries.push_back(to_double(trim(token), line_no));
    Eigen::VectorXd out(static_cast<long>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) out[static_cast<long>(i)] = entries[i];
    return out;
}

std::string vector_to_string(const Eigen::VectorXd& v) {
    std::string out;
    for (long i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

const char* initial_condition_name(InitialCondition ic) {
    switch (ic) {
        case InitialCondition::uniform_rest: return "uniform_rest";
        case InitialCondition::uniform_speed: return "uniform_speed";
        case InitialCondition::explicit_state: return "explicit";
    }
    return "uniform_rest";
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.params.n_agents = 0;
    cfg.params.ring_length = 501.0;
    cfg.params.alpha = 1.0;
    cfg.params.beta = 1.0;
    cfg.params.gamma = 1.0;
    cfg.params.sigma = 1.0;
    cfg.params.u = 0.0;
    cfg.sim.dt = 1e-3;
    cfg.sim.t_end = 500.0;
    cfg.sim.seed = 42;
    cfg.sim.record_every = 100;
    cfg.sim.initial_condition = InitialCondition::uniform_rest;
    cfg.ensemble.replicas = 1;
    cfg.ensemble.sample_stride = 1;

    bool have_n = false;
    bool have_burn_in = false;
    bool have_initial_Q = false;
    bool have_initial_p = false;
    std::set<std::string> seen;

    std::istringstream in(text);
    std::string raw_line;
    long line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const auto hash = raw_line.find('#');
        const std::string line = trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "missing key before '='");
        if (value.empty()) fail(line_no, "missing value for key '" + key + "'");
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

        if (key == "n_agents") {
            cfg.params.n_agents = static_cast<int>(to_long(value, line_no));
            have_n = true;
        } else if (key == "ring_length") {
            cfg.params.ring_length = to_double(value, line_no);
        } else if (key == "alpha") {
            cfg.params.alpha = to_double(value, line_no);
        } else if (key == "beta") {
            cfg.params.beta = to_double(value, line_no);
        } else if (key == "gamma") {
            cfg.params.gamma = to_double(value, line_no);
        } else if (key == "sigma") {
            cfg.params.sigma = to_double(value, line_no);
        } else if (key == "u") {
            cfg.params.u = to_double(value, line_no);
        } else if (key == "dt") {
            cfg.sim.dt = to_double(value, line_no);
        } else if (key == "t_end") {
            cfg.sim.t_end = to_double(value, line_no);
        } else if (key == "seed") {
            cfg.sim.seed = to_seed(value, line_no);
        } else if (key == "record_every") {
            cfg.sim.record_every = to_long(value, line_no);
        } else if (key == "initial_condition") {
            if (value == "uniform_rest")
                cfg.sim.initial_condition = InitialCondition::uniform_rest;
            else if (value == "uniform_speed")
                cfg.sim.initial_condition = InitialCondition::uniform_speed;
            else if (value == "explicit")
                cfg.sim.initial_condition = InitialCondition::explicit_state;
            else
                fail(line_no, "initial_condition must be uniform_rest, uniform_speed or explicit");
        } else if (key == "initial_Q") {
            cfg.sim.initial_state.Q = to_vector(value, line_no);
            have_initial_Q = true;
        } else if (key == "initial_p") {
            cfg.sim.initial_state.p = to_vector(value, line_no);
            have_initial_p = true;
        } else if (key == "replicas") {
            cfg.ensemble.replicas = static_cast<int>(to_long(value, line_no));
        } else if (key == "burn_in") {
            cfg.ensemble.burn_in = to_double(value, line_no);
            have_burn_in = true;
        } else if (key == "sample_stride") {
            cfg.ensemble.sample_stride = to_long(value, line_no);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }

    if (!have_n) throw ConfigError("config: required key 'n_agents' is missing (it has no default)");
    cfg.params = validate_parameters(cfg.params);

    if (cfg.sim.initial_condition == InitialCondition::explicit_state) {
        if (!have_initial_Q || !have_initial_p)
            throw ConfigError("config: initial_condition = explicit requires initial_Q and initial_p");
    } else if (have_initial_Q || have_initial_p) {
        throw ConfigError("config: initial_Q/initial_p require initial_condition = explicit");
    }

    // Default burn-in: ten relaxation times of the slowest controlled mode,
    // capped at half the horizon so short runs stay usable.
    if (!have_burn_in)
        cfg.ensemble.burn_in =
            cfg.params.gamma > 0.0 ? std::min(10.0 / cfg.params.gamma, 0.5 * cfg.sim.t_end) : 0.0;
    cfg.ensemble.base_seed = cfg.sim.seed;

    validate_sim_config(cfg.sim, cfg.params);
    if (cfg.ensemble.replicas < 1) throw ConfigError("config: replicas must be at least 1");
    if (cfg.ensemble.sample_stride < 1) throw ConfigError("config: sample_stride must be at least 1");
    if (cfg.ensemble.burn_in < 0.0 || !std::isfinite(cfg.ensemble.burn_in))
        throw ConfigError("config: burn_in must be nonnegative");
    // burn_in < t_end is enforced by the ensemble operations that consume it.
    return cfg;
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out << "n_agents = " << config.params.n_agents << "\n";
    out << "ring_length = " << format_double(config.params.ring_length) << "\n";
    out << "alpha = " << format_double(config.params.alpha) << "\n";
    out << "beta = " << format_double(config.params.beta) << "\n";
    out << "gamma = " << format_double(config.params.gamma) << "\n";
    out << "sigma = " << format_double(config.params.sigma) << "\n";
    out << "u = " << format_double(config.params.u) << "\n";
    out << "dt = " << format_double(config.sim.dt) << "\n";
    out << "t_end = " << format_double(config.sim.t_end) << "\n";
    out << "seed = " << config.sim.seed << "\n";
    out << "record_every = " << config.sim.record_every << "\n";
    out << "initial_condition = " << initial_condition_name(config.sim.initial_condition) << "\n";
    if (config.sim.initial_condition == InitialCondition::explicit_state) {
        out << "initial_Q = " << vector_to_string(config.sim.initial_state.Q) << "\n";
        out << "initial_p = " << vector_to_string(config.sim.initial_state.p) << "\n";
    }
    out << "replicas = " << config.ensemble.replicas << "\n";
    out << "burn_in = " << format_double(config.ensemble.burn_in) << "\n";
    out << "sample_stride = " << config.ensemble.sample_stride << "\n";
    return out.str();
}

} // namespace phsf
