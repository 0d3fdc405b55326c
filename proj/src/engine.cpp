#include "discourse/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "discourse/csv.hpp"
#include "discourse/dynamics.hpp"
#include "discourse/fixtures.hpp"
#include "discourse/http_backend.hpp"
#include "discourse/text_util.hpp"
#include "discourse/version.hpp"

namespace discourse {

namespace {

// Bounded worker pool over [0, count). Work items are claimed through an
// atomic counter; every write inside fn must go to its own slot so results
// do not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    const std::size_t nthreads =
        std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

RunAssets load_assets(const SimConfig& config) {
    RunAssets assets;
    const std::optional<std::size_t> expected =
        config.n_days > 0 ? std::optional<std::size_t>(config.n_days) : std::nullopt;
    assets.timeline = config.timeline_path.empty()
                          ? parse_timeline(fixtures::timeline_json(), expected)
                          : load_timeline(config.timeline_path, expected);
    assets.lexicon =
        config.lexicon_path.empty() ? default_lexicon() : load_lexicon(config.lexicon_path);
    if (config.offline) {
        assets.news_snippets = config.news_fixture_path.empty()
                                   ? fixtures::default_news_fixture()
                                   : fixtures::load_news_fixture(config.news_fixture_path);
    }
    return assets;
}

SimResult run_simulation(const SimConfig& config) {
    return run_simulation(config, load_assets(config));
}

SimResult run_simulation(const SimConfig& config, const RunAssets& assets) {
    validate_config(config);
    if (config.n_days > 0 && assets.timeline.entries.size() != config.n_days) {
        throw ConfigError("timeline has " + std::to_string(assets.timeline.entries.size()) +
                          " entries but the run is configured for " +
                          std::to_string(config.n_days) + " days");
    }

    SimResult result;
    std::vector<Agent> agents = sample_population(config.n_agents, config.seed);
    result.initial_population = agents;

    Rng graph_rng = derive_rng(config.seed, StreamId::graph);
    result.graph = build_ws_graph(config.n_agents, config.network.k, config.network.p, graph_rng);

    StubBackend stub(derive_seed(config.seed, StreamId::stub_generation), assets.lexicon);
    std::unique_ptr<GenerationBackend> remote;
    GenerationBackend* backend = &stub;
    if (config.backend == BackendKind::remote) {
        OllamaBackend::Options opts;
        opts.base_url = config.base_url;
        opts.model = config.model_name;
        opts.timeout_seconds = config.timeout_seconds;
        opts.max_inflight = config.workers;
        remote = std::make_unique<OllamaBackend>(std::move(opts));
        backend = remote.get();
    }

    std::unique_ptr<NewsClient> news;
    if (config.offline) {
        news = std::make_unique<FixtureNewsClient>(assets.news_snippets);
    } else {
        news = std::make_unique<HttpNewsClient>(config.search_url);
    }

    const std::size_t n = config.n_agents;
    result.panel.reserve(n * config.n_days);

    std::vector<double> scores(n, 0.0);
    std::vector<std::uint8_t> fell_back(n, 0);

    for (std::size_t day = 0; day < config.n_days; ++day) {
        const DayEntry& entry = assets.timeline.entries[day];
        const DayContext day_ctx = make_day_context(entry.text, assets.lexicon);

        // phase 1: observe + generate + score, one slot per agent
        parallel_for(n, config.workers, [&](std::size_t i) {
            Agent& agent = agents[i];
            if (!agent.quirk.has_value()) {
                Rng quirk_rng = derive_rng(config.seed, StreamId::quirk, i);
                assign_quirk(agent, quirk_rng);
            }
            Observation obs = observe(agent, entry, assets.timeline.critical_event, *news);
            const std::string prompt = build_prompt(agent, obs);
            PostResult post =
                generate_post(*backend, stub, prompt, config.gen_temperature);
            ScoreResult scored =
                score_post(*backend, post.post, assets.lexicon, config.score_temperature);
            agent.messages.push_back(std::move(post.post));
            scores[i] = scored.score;
            fell_back[i] = (post.used_fallback || scored.used_fallback) ? 1 : 0;
        });

        // phase 2: belief updates, after the barrier so every same-day score exists
        parallel_for(n, config.workers, [&](std::size_t i) {
            UpdateInputs inputs;
            inputs.own_score = scores[i];
            inputs.day = day_ctx;
            const auto& nbrs = result.graph.neighbors(i);
            inputs.neighbor_scores.reserve(nbrs.size());
            for (std::uint32_t j : nbrs) inputs.neighbor_scores.push_back(scores[j]);
            agents[i] = step_agent(agents[i], inputs, config.coefficients);
        });

        for (std::size_t i = 0; i < n; ++i) {
            const Agent& agent = agents[i];
            PanelRow row;
            row.day = day;
            row.date = entry.date;
            row.agent_id = agent.id;
            row.kind = std::string(to_string(agent.kind));
            row.post = agent.messages.back();
            row.own_score = scores[i];
            row.attitude = agent.attitude;
            row.mood = agent.mood;
            row.exposure = agent.exposure;
            row.economic_threat = agent.beliefs.economic_threat;
            row.cultural_threat = agent.beliefs.cultural_threat;
            row.security_threat = agent.beliefs.security_threat;
            row.humanitarian = agent.beliefs.humanitarian;
            row.backend_used = config.backend == BackendKind::stub
                                   ? "stub"
                                   : (fell_back[i] ? "stub_fallback" : "remote");
            row.evidence_level = std::string(to_string(entry.evidence));
            result.panel.push_back(std::move(row));
        }
        result.metrics.push_back(compute_metrics(agents, day, config.bimodality));
    }

    result.agents = std::move(agents);
    return result;
}

namespace {

double population_std_dev(std::span<const double> values, double mean) {
    if (values.empty()) return 0.0;
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return std::sqrt(sq / static_cast<double>(values.size()));
}

// Sarle's bimodality coefficient from moment estimators; 0 when undefined
// (n < 4 or zero variance).
double bimodality_coefficient(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    if (values.size() < 4) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) return 0.0;
    const double skew = m3 / std::pow(m2, 1.5);
    const double excess_kurtosis = m4 / (m2 * m2) - 3.0;
    const double correction = 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
    return (skew * skew + 1.0) / (excess_kurtosis + correction);
}

} // namespace

DailyMetrics metrics_from_values(std::size_t day, std::span<const AgentKind> kinds,
                                 std::span<const double> attitudes,
                                 std::span<const double> moods,
                                 std::span<const double> exposures, bool with_bimodality) {
    DailyMetrics m;
    m.day = day;
    const auto n = static_cast<double>(attitudes.size());
    if (attitudes.empty()) return m;

    double sum_att = 0.0, sum_mood = 0.0, sum_exp = 0.0;
    std::array<double, 4> kind_sum{};
    std::array<std::size_t, 4> kind_n{};
    for (std::size_t i = 0; i < attitudes.size(); ++i) {
        sum_att += attitudes[i];
        sum_mood += moods[i];
        sum_exp += exposures[i];
        for (std::size_t k = 0; k < kAgentKinds.size(); ++k) {
            if (kinds[i] == kAgentKinds[k]) {
                kind_sum[k] += attitudes[i];
                kind_n[k] += 1;
                break;
            }
        }
    }
    m.mean_attitude = sum_att / n;
    m.mean_mood = sum_mood / n;
    m.mean_exposure = sum_exp / n;
    m.polarization = population_std_dev(attitudes, m.mean_attitude);
    for (std::size_t k = 0; k < kAgentKinds.size(); ++k) {
        m.kind_mean_attitude[k] = kind_n[k] == 0 ? 0.0 : kind_sum[k] / static_cast<double>(kind_n[k]);
    }
    if (with_bimodality) m.bimodality = bimodality_coefficient(attitudes);
    return m;
}

DailyMetrics compute_metrics(const std::vector<Agent>& agents, std::size_t day,
                             bool with_bimodality) {
    std::vector<AgentKind> kinds;
    std::vector<double> attitudes, moods, exposures;
    kinds.reserve(agents.size());
    attitudes.reserve(agents.size());
    moods.reserve(agents.size());
    exposures.reserve(agents.size());
    for (const Agent& a : agents) {
        kinds.push_back(a.kind);
        attitudes.push_back(a.attitude);
        moods.push_back(a.mood);
        exposures.push_back(a.exposure);
    }
    return metrics_from_values(day, kinds, attitudes, moods, exposures, with_bimodality);
}

std::string panel_csv_header() {
    return "day,date,agent_id,kind,post,own_score,attitude,mood,exposure,"
           "economic_threat,cultural_threat,security_threat,humanitarian,"
           "backend_used,evidence_level";
}

std::string panel_row_csv(const PanelRow& row) {
    std::string line;
    line += std::to_string(row.day) + ',';
    line += csv_escape(row.date) + ',';
    line += csv_escape(row.agent_id) + ',';
    line += csv_escape(row.kind) + ',';
    line += csv_escape(row.post, /*always_quote=*/true) + ',';
    line += format_double(row.own_score) + ',';
    line += format_double(row.attitude) + ',';
    line += format_double(row.mood) + ',';
    line += format_double(row.exposure) + ',';
    line += format_double(row.economic_threat) + ',';
    line += format_double(row.cultural_threat) + ',';
    line += format_double(row.security_threat) + ',';
    line += format_double(row.humanitarian) + ',';
    line += csv_escape(row.backend_used) + ',';
    line += csv_escape(row.evidence_level);
    return line;
}

std::string metrics_csv_header(bool with_bimodality) {
    std::string header = "day,mean_attitude,polarization,mean_mood,mean_exposure";
    for (AgentKind kind : kAgentKinds) {
        header += ",mean_attitude_" + std::string(to_string(kind));
    }
    if (with_bimodality) header += ",bimodality";
    return header;
}

std::string metrics_row_csv(const DailyMetrics& m) {
    std::string line = std::to_string(m.day);
    line += ',' + format_double(m.mean_attitude);
    line += ',' + format_double(m.polarization);
    line += ',' + format_double(m.mean_mood);
    line += ',' + format_double(m.mean_exposure);
    for (double v : m.kind_mean_attitude) line += ',' + format_double(v);
    if (m.bimodality.has_value()) line += ',' + format_double(*m.bimodality);
    return line;
}

namespace {

nlohmann::json agent_to_json(const Agent& a) {
    nlohmann::json doc = {
        {"id", a.id},
        {"kind", std::string(to_string(a.kind))},
        {"attitude", a.attitude},
        {"exposure", a.exposure},
        {"mood", a.mood},
        {"beliefs",
         {{"economic_threat", a.beliefs.economic_threat},
          {"cultural_threat", a.beliefs.cultural_threat},
          {"security_threat", a.beliefs.security_threat},
          {"humanitarian", a.beliefs.humanitarian}}},
        {"psych",
         {{"openness", a.psych.openness},
          {"conformity", a.psych.conformity},
          {"emotional_reactivity", a.psych.emotional_reactivity},
          {"trust_peers", a.psych.trust_peers}}},
    };
    doc["quirk"] = a.quirk.has_value() ? nlohmann::json(std::string(to_string(*a.quirk)))
                                       : nlohmann::json(nullptr);
    return doc;
}

nlohmann::json metrics_to_json(const DailyMetrics& m) {
    nlohmann::json doc = {
        {"day", m.day},
        {"mean_attitude", m.mean_attitude},
        {"polarization", m.polarization},
        {"mean_mood", m.mean_mood},
        {"mean_exposure", m.mean_exposure},
    };
    for (std::size_t k = 0; k < kAgentKinds.size(); ++k) {
        doc["mean_attitude_" + std::string(to_string(kAgentKinds[k]))] = m.kind_mean_attitude[k];
    }
    if (m.bimodality.has_value()) doc["bimodality"] = *m.bimodality;
    return doc;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

} // namespace

std::string population_json(const std::vector<Agent>& agents, int indent) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Agent& a : agents) doc.push_back(agent_to_json(a));
    return doc.dump(indent) + "\n";
}

void write_outputs(const SimResult& result, const SimConfig& config,
                   const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                                     ec.message());

    std::string panel = panel_csv_header() + "\n";
    for (const PanelRow& row : result.panel) panel += panel_row_csv(row) + "\n";
    write_file(dir / "panel.csv", panel);

    std::string metrics = metrics_csv_header(config.bimodality) + "\n";
    for (const DailyMetrics& m : result.metrics) metrics += metrics_row_csv(m) + "\n";
    write_file(dir / "metrics.csv", metrics);

    nlohmann::json summary = {
        {"engine", kEngineName},
        {"engine_version", kEngineVersion},
        {"seed", config.seed},
        {"config", nlohmann::json::parse(config_to_json(config))},
        {"metrics", nlohmann::json::array()},
    };
    for (const DailyMetrics& m : result.metrics) summary["metrics"].push_back(metrics_to_json(m));
    write_file(dir / "run_summary.json", summary.dump(2) + "\n");

    std::ostringstream edges;
    write_edgelist(result.graph, edges);
    write_file(dir / "graph.edgelist", edges.str());

    write_file(dir / "population.json", population_json(result.initial_population));
}

} // namespace discourse
