#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "discourse/dynamics.hpp"
#include "discourse/generation.hpp"

namespace discourse {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetworkConfig {
    std::size_t k = 6; // even base degree
    double p = 0.3;    // rewiring probability

    bool operator==(const NetworkConfig&) const = default;
};

struct SimConfig {
    std::size_t n_agents = 100;
    std::size_t n_days = 15;
    std::uint64_t seed = 42;
    NetworkConfig network;
    BackendKind backend = BackendKind::remote;
    std::string model_name = "mistral:7b-instruct-q4_0";
    std::string base_url = "http://localhost:11434";
    double gen_temperature = 0.75;
    double score_temperature = 0.0;
    bool offline = false;
    int timeout_seconds = 60;
    int workers = 4; // worker pool size; also bounds remote in-flight requests
    std::string timeline_path;     // empty -> bundled fixture
    std::string lexicon_path;      // empty -> built-in defaults
    std::string news_fixture_path; // empty -> bundled fixture (offline mode)
    std::string search_url = "https://html.duckduckgo.com/html/";
    std::string out_dir = "out";
    bool bimodality = false; // extra metrics column
    Coefficients coefficients;

    bool operator==(const SimConfig&) const = default;
};

std::string_view to_string(BackendKind kind);
BackendKind backend_kind_from_string(std::string_view name);

// Throws ConfigError on any invariant violation (n_agents > k, k even >= 2,
// p in [0,1], temperatures in [0,2], workers >= 1, timeout > 0).
void validate_config(const SimConfig& config);

// Full echo; from_json(to_json(c)) == c.
std::string config_to_json(const SimConfig& config, int indent = 2);

// Partial documents are fine: missing keys keep their defaults. Unknown keys
// are rejected. Throws ConfigError.
SimConfig config_from_json(const std::string& json_text);
SimConfig load_config(const std::string& path);

// DISCOURSE_BASE_URL and DISCOURSE_OFFLINE=1. Applied between the config
// file and CLI flags (flags win).
void apply_env_overrides(SimConfig& config);

} // namespace discourse
