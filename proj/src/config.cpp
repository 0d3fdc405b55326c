#include "discourse/config.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace discourse {

std::string_view to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::remote: return "remote";
        case BackendKind::stub: return "stub";
    }
    throw std::logic_error("invalid BackendKind");
}

BackendKind backend_kind_from_string(std::string_view name) {
    if (name == "remote") return BackendKind::remote;
    if (name == "stub") return BackendKind::stub;
    throw ConfigError("backend must be \"remote\" or \"stub\", got \"" + std::string(name) + "\"");
}

void validate_config(const SimConfig& config) {
    if (config.network.k % 2 != 0 || config.network.k < 2) {
        throw ConfigError("network.k must be an even integer >= 2");
    }
    if (config.n_agents <= config.network.k) {
        throw ConfigError("n_agents must exceed network.k (got " +
                          std::to_string(config.n_agents) + " agents, k=" +
                          std::to_string(config.network.k) + ")");
    }
    if (config.network.p < 0.0 || config.network.p > 1.0) {
        throw ConfigError("network.p must be in [0, 1]");
    }
    for (double t : {config.gen_temperature, config.score_temperature}) {
        if (t < 0.0 || t > 2.0) throw ConfigError("temperatures must be in [0, 2]");
    }
    if (config.workers < 1) throw ConfigError("workers must be >= 1");
    if (config.timeout_seconds <= 0) throw ConfigError("timeout_seconds must be > 0");
    if (config.backend == BackendKind::remote) {
        if (config.base_url.empty()) throw ConfigError("remote backend needs a base_url");
        if (config.model_name.empty()) throw ConfigError("remote backend needs a model_name");
    }
}

namespace {

nlohmann::json coefficients_to_json(const Coefficients& c) {
    return {
        {"salience_per_keyword", c.salience_per_keyword},
        {"exposure_increment", c.exposure_increment},
        {"mood_decay", c.mood_decay},
        {"mood_shock_threat", c.mood_shock_threat},
        {"mood_shock_calm", c.mood_shock_calm},
        {"weight_economic", c.weight_economic},
        {"weight_cultural", c.weight_cultural},
        {"weight_security", c.weight_security},
        {"weight_humanitarian", c.weight_humanitarian},
        {"mix_own_score", c.mix_own_score},
        {"mix_peer_pull", c.mix_peer_pull},
        {"mix_belief", c.mix_belief},
        {"inertia_openness_scale", c.inertia_openness_scale},
        {"update_economic_cultural", c.update_economic_cultural},
    };
}

template <typename T>
void read_field(const nlohmann::json& doc, const char* key, T& target) {
    if (!doc.contains(key)) return;
    try {
        target = doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config: bad value for \"") + key + "\"");
    }
}

void reject_unknown(const nlohmann::json& doc, std::initializer_list<std::string_view> known,
                    const std::string& scope) {
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (auto k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError("config: unknown key \"" + scope + key + "\"");
    }
}

Coefficients coefficients_from_json(const nlohmann::json& doc) {
    reject_unknown(doc,
                   {"salience_per_keyword", "exposure_increment", "mood_decay",
                    "mood_shock_threat", "mood_shock_calm", "weight_economic",
                    "weight_cultural", "weight_security", "weight_humanitarian",
                    "mix_own_score", "mix_peer_pull", "mix_belief",
                    "inertia_openness_scale", "update_economic_cultural"},
                   "coefficients.");
    Coefficients c;
    read_field(doc, "salience_per_keyword", c.salience_per_keyword);
    read_field(doc, "exposure_increment", c.exposure_increment);
    read_field(doc, "mood_decay", c.mood_decay);
    read_field(doc, "mood_shock_threat", c.mood_shock_threat);
    read_field(doc, "mood_shock_calm", c.mood_shock_calm);
    read_field(doc, "weight_economic", c.weight_economic);
    read_field(doc, "weight_cultural", c.weight_cultural);
    read_field(doc, "weight_security", c.weight_security);
    read_field(doc, "weight_humanitarian", c.weight_humanitarian);
    read_field(doc, "mix_own_score", c.mix_own_score);
    read_field(doc, "mix_peer_pull", c.mix_peer_pull);
    read_field(doc, "mix_belief", c.mix_belief);
    read_field(doc, "inertia_openness_scale", c.inertia_openness_scale);
    read_field(doc, "update_economic_cultural", c.update_economic_cultural);
    return c;
}

} // namespace

std::string config_to_json(const SimConfig& c, int indent) {
    nlohmann::json doc = {
        {"n_agents", c.n_agents},
        {"n_days", c.n_days},
        {"seed", c.seed},
        {"network", {{"k", c.network.k}, {"p", c.network.p}}},
        {"backend", std::string(to_string(c.backend))},
        {"model_name", c.model_name},
        {"base_url", c.base_url},
        {"gen_temperature", c.gen_temperature},
        {"score_temperature", c.score_temperature},
        {"offline", c.offline},
        {"timeout_seconds", c.timeout_seconds},
        {"workers", c.workers},
        {"timeline_path", c.timeline_path},
        {"lexicon_path", c.lexicon_path},
        {"news_fixture_path", c.news_fixture_path},
        {"search_url", c.search_url},
        {"out_dir", c.out_dir},
        {"bimodality", c.bimodality},
        {"coefficients", coefficients_to_json(c.coefficients)},
    };
    return doc.dump(indent);
}

SimConfig config_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

    reject_unknown(doc,
                   {"n_agents", "n_days", "seed", "network", "backend", "model_name",
                    "base_url", "gen_temperature", "score_temperature", "offline",
                    "timeout_seconds", "workers", "timeline_path", "lexicon_path",
                    "news_fixture_path", "search_url", "out_dir", "bimodality",
                    "coefficients"},
                   "");

    SimConfig c;
    read_field(doc, "n_agents", c.n_agents);
    read_field(doc, "n_days", c.n_days);
    read_field(doc, "seed", c.seed);
    if (doc.contains("network")) {
        const auto& net = doc.at("network");
        if (!net.is_object()) throw ConfigError("config: \"network\" must be an object");
        reject_unknown(net, {"k", "p"}, "network.");
        read_field(net, "k", c.network.k);
        read_field(net, "p", c.network.p);
    }
    if (doc.contains("backend")) {
        c.backend = backend_kind_from_string(doc.at("backend").get<std::string>());
    }
    read_field(doc, "model_name", c.model_name);
    read_field(doc, "base_url", c.base_url);
    read_field(doc, "gen_temperature", c.gen_temperature);
    read_field(doc, "score_temperature", c.score_temperature);
    read_field(doc, "offline", c.offline);
    read_field(doc, "timeout_seconds", c.timeout_seconds);
    read_field(doc, "workers", c.workers);
    read_field(doc, "timeline_path", c.timeline_path);
    read_field(doc, "lexicon_path", c.lexicon_path);
    read_field(doc, "news_fixture_path", c.news_fixture_path);
    read_field(doc, "search_url", c.search_url);
    read_field(doc, "out_dir", c.out_dir);
    read_field(doc, "bimodality", c.bimodality);
    if (doc.contains("coefficients")) {
        if (!doc.at("coefficients").is_object()) {
            throw ConfigError("config: \"coefficients\" must be an object");
        }
        c.coefficients = coefficients_from_json(doc.at("coefficients"));
    }
    return c;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return config_from_json(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void apply_env_overrides(SimConfig& config) {
    if (const char* url = std::getenv("DISCOURSE_BASE_URL"); url != nullptr && *url != '\0') {
        config.base_url = url;
    }
    if (const char* off = std::getenv("DISCOURSE_OFFLINE"); off != nullptr) {
        config.offline = std::string_view(off) == "1";
    }
}

} // namespace discourse
