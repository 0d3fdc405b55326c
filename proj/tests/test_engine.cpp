#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "discourse/csv.hpp"
#include "discourse/engine.hpp"
#include "discourse/fixtures.hpp"
#include "discourse/text_util.hpp"

using namespace discourse;

namespace {

// Independent RFC-4180 reader used as the round-trip oracle. Deliberately
// written against the RFC, not against csv_escape.
std::vector<std::string> parse_csv_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    quoted = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
            ++i;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
            ++i;
        } else {
            field += c;
            ++i;
        }
    }
    fields.push_back(field);
    return fields;
}

SimConfig stub_config(std::size_t agents, std::size_t days, std::size_t k = 4) {
    SimConfig config;
    config.n_agents = agents;
    config.n_days = days;
    config.network.k = k;
    config.backend = BackendKind::stub;
    config.offline = true;
    return config;
}

RunAssets assets_for_days(std::size_t days) {
    RunAssets assets;
    assets.lexicon = default_lexicon();
    const Timeline full = fixtures::default_timeline();
    assets.timeline.critical_event = full.critical_event;
    for (std::size_t i = 0; i < days && i < full.entries.size(); ++i) {
        assets.timeline.entries.push_back(full.entries[i]);
    }
    assets.news_snippets = fixtures::default_news_fixture();
    return assets;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("discourse_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("zero-day run: empty panel and metrics, population still sampled") {
    const SimConfig config = stub_config(10, 0);
    const SimResult result = run_simulation(config, assets_for_days(0));
    CHECK(result.panel.empty());
    CHECK(result.metrics.empty());
    CHECK(result.initial_population.size() == 10);
    CHECK(result.agents.size() == 10);
}

TEST_CASE("small stub run produces a complete panel") {
    const SimConfig config = stub_config(10, 3);
    const SimResult result = run_simulation(config, assets_for_days(3));

    REQUIRE(result.panel.size() == 30);
    std::set<std::pair<std::size_t, std::string>> seen;
    for (const PanelRow& row : result.panel) {
        CHECK(seen.insert({row.day, row.agent_id}).second); // each pair once
        CHECK(row.backend_used == "stub");
        CHECK(row.attitude >= -1.0);
        CHECK(row.attitude <= 1.0);
        CHECK_FALSE(row.post.empty());
        CHECK_FALSE(row.evidence_level.empty());
        CHECK(row.date.size() == 10);
    }
    CHECK(result.metrics.size() == 3);

    SUBCASE("per-agent trajectories match attitude_history") {
        for (const Agent& agent : result.agents) {
            REQUIRE(agent.attitude_history.size() == 3);
            REQUIRE(agent.messages.size() == 3);
            CHECK(agent.reasoning_log.size() == 6); // two tool calls per day
            for (std::size_t day = 0; day < 3; ++day) {
                const auto& row = result.panel[day * 10 + agent.index];
                CHECK(row.agent_id == agent.id);
                CHECK(row.attitude == agent.attitude_history[day]);
                CHECK(row.post == agent.messages[day]);
            }
        }
    }
    SUBCASE("exposure is non-decreasing along each trajectory") {
        for (std::size_t i = 0; i < 10; ++i) {
            double prev = 0.0;
            for (std::size_t day = 0; day < 3; ++day) {
                const auto& row = result.panel[day * 10 + i];
                CHECK(row.exposure >= prev);
                prev = row.exposure;
            }
        }
    }
}

TEST_CASE("stub runs are deterministic and worker-count invariant") {
    SimConfig config = stub_config(12, 4);
    const RunAssets assets = assets_for_days(4);

    config.workers = 1;
    const SimResult serial = run_simulation(config, assets);
    config.workers = 7;
    const SimResult threaded = run_simulation(config, assets);

    REQUIRE(serial.panel.size() == threaded.panel.size());
    for (std::size_t i = 0; i < serial.panel.size(); ++i) {
        CHECK(panel_row_csv(serial.panel[i]) == panel_row_csv(threaded.panel[i]));
    }
    for (std::size_t i = 0; i < serial.metrics.size(); ++i) {
        CHECK(metrics_row_csv(serial.metrics[i]) == metrics_row_csv(threaded.metrics[i]));
    }
}

TEST_CASE("timeline length mismatch aborts before day 0") {
    const SimConfig config = stub_config(10, 5);
    CHECK_THROWS_AS(run_simulation(config, assets_for_days(4)), ConfigError);
}

TEST_CASE("config validation failures") {
    SimConfig config = stub_config(4, 1); // 4 agents <= k
    config.network.k = 4;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
    config = stub_config(10, 1);
    config.gen_temperature = 2.5;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
    config = stub_config(10, 1);
    config.workers = 0;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
    config = stub_config(10, 1);
    config.network.p = 1.2;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
}

TEST_CASE("compute_metrics") {
    auto agent_with = [](AgentKind kind, double attitude) {
        Agent a;
        a.kind = kind;
        a.attitude = attitude;
        a.mood = 0.25;
        a.exposure = 0.5;
        return a;
    };
    SUBCASE("equal attitudes give zero polarization") {
        std::vector<Agent> agents(5, agent_with(AgentKind::centrist, 0.3));
        const DailyMetrics m = compute_metrics(agents, 0);
        CHECK(m.mean_attitude == doctest::Approx(0.3));
        CHECK(m.polarization == 0.0);
        CHECK(m.mean_mood == doctest::Approx(0.25));
        CHECK(m.mean_exposure == doctest::Approx(0.5));
    }
    SUBCASE("two opposite agents: mean 0, population std dev 1") {
        std::vector<Agent> agents = {agent_with(AgentKind::centrist, -1.0),
                                     agent_with(AgentKind::far_right, 1.0)};
        const DailyMetrics m = compute_metrics(agents, 0);
        CHECK(m.mean_attitude == 0.0);
        CHECK(m.polarization == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(m.kind_mean_attitude[0] == -1.0); // centrist slot
        CHECK(m.kind_mean_attitude[2] == 1.0);  // far_right slot
        CHECK(m.kind_mean_attitude[3] == 0.0);  // no media agents
    }
    SUBCASE("bimodality column only when requested") {
        std::vector<Agent> agents(6, agent_with(AgentKind::centrist, 0.1));
        agents[0].attitude = -0.9;
        CHECK_FALSE(compute_metrics(agents, 0, false).bimodality.has_value());
        CHECK(compute_metrics(agents, 0, true).bimodality.has_value());
    }
}

TEST_CASE("csv escaping round-trips through an independent RFC-4180 parser") {
    Rng rng(77);
    const std::string alphabet = "abc,\"\n\r ;'x0";
    for (int i = 0; i < 500; ++i) {
        std::vector<std::string> fields;
        const std::size_t nfields = 1 + rng.below(5);
        std::string line;
        for (std::size_t f = 0; f < nfields; ++f) {
            std::string field;
            const std::size_t len = rng.below(12);
            for (std::size_t j = 0; j < len; ++j) {
                char c = alphabet[rng.below(alphabet.size())];
                if (c == '\n' || c == '\r') c = ' '; // rows are single-line here
                field += c;
            }
            fields.push_back(field);
            if (f > 0) line += ',';
            line += csv_escape(field, /*always_quote=*/rng.chance(0.5));
        }
        CHECK(parse_csv_record(line) == fields);
    }
}

TEST_CASE("panel csv round-trips posts with commas and quotes") {
    PanelRow row;
    row.day = 3;
    row.date = "2025-04-29";
    row.agent_id = "agent_7";
    row.kind = "media";
    row.post = R"(They said "Ireland is full", again, and again)";
    row.own_score = 0.5;
    row.attitude = -0.25;
    row.backend_used = "stub";
    row.evidence_level = "verified";
    const auto fields = parse_csv_record(panel_row_csv(row));
    REQUIRE(fields.size() == 15);
    CHECK(fields[0] == "3");
    CHECK(fields[4] == row.post);
    CHECK(fields[5] == "0.5");
    CHECK(fields[13] == "stub");
}

TEST_CASE("config JSON round-trip") {
    SUBCASE("defaults") {
        const SimConfig config;
        CHECK(config_from_json(config_to_json(config)) == config);
    }
    SUBCASE("customized") {
        SimConfig config = stub_config(20, 5, 6);
        config.seed = 7;
        config.model_name = "other-model";
        config.coefficients.mood_decay = 0.9;
        config.coefficients.update_economic_cultural = true;
        config.bimodality = true;
        CHECK(config_from_json(config_to_json(config)) == config);
    }
    SUBCASE("partial document keeps defaults") {
        const SimConfig config = config_from_json(R"({"seed": 9, "backend": "stub"})");
        CHECK(config.seed == 9);
        CHECK(config.backend == BackendKind::stub);
        CHECK(config.n_agents == 100);
        CHECK(config.coefficients == Coefficients{});
    }
    SUBCASE("unknown keys rejected") {
        CHECK_THROWS_AS(config_from_json(R"({"n_agent": 5})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"coefficients": {"salience": 1}})"), ConfigError);
        CHECK_THROWS_AS(config_from_json(R"({"network": {"q": 1}})"), ConfigError);
    }
    SUBCASE("bad backend rejected") {
        CHECK_THROWS_AS(config_from_json(R"({"backend": "gpu"})"), ConfigError);
    }
}

TEST_CASE("write_outputs produces the full file set") {
    TempDir dir("outputs");
    const SimConfig config = stub_config(8, 2);
    const SimResult result = run_simulation(config, assets_for_days(2));
    write_outputs(result, config, dir.path.string());

    for (const char* name :
         {"panel.csv", "metrics.csv", "run_summary.json", "graph.edgelist", "population.json"}) {
        CHECK(std::filesystem::exists(dir.path / name));
    }

    SUBCASE("panel has header plus one row per agent-day") {
        std::istringstream in(slurp(dir.path / "panel.csv"));
        std::string line;
        std::size_t lines = 0;
        while (std::getline(in, line)) ++lines;
        CHECK(lines == 1 + 8 * 2);
    }
    SUBCASE("metrics recomputed from panel rows reproduce metrics.csv") {
        std::istringstream in(slurp(dir.path / "panel.csv"));
        std::string line;
        std::getline(in, line); // header
        std::map<std::size_t, std::vector<std::vector<std::string>>> by_day;
        while (std::getline(in, line)) {
            auto fields = parse_csv_record(line);
            by_day[std::stoul(fields[0])].push_back(fields);
        }
        std::istringstream metrics_in(slurp(dir.path / "metrics.csv"));
        std::string metrics_line;
        std::getline(metrics_in, metrics_line);
        CHECK(metrics_line == metrics_csv_header(false));
        for (std::size_t day = 0; day < 2; ++day) {
            std::vector<AgentKind> kinds;
            std::vector<double> attitudes, moods, exposures;
            for (const auto& fields : by_day[day]) {
                kinds.push_back(agent_kind_from_string(fields[3]));
                attitudes.push_back(std::stod(fields[6]));
                moods.push_back(std::stod(fields[7]));
                exposures.push_back(std::stod(fields[8]));
            }
            const DailyMetrics recomputed =
                metrics_from_values(day, kinds, attitudes, moods, exposures, false);
            std::getline(metrics_in, metrics_line);
            CHECK(metrics_line == metrics_row_csv(recomputed));
        }
    }
    SUBCASE("run summary echoes a round-trippable config") {
        const std::string summary = slurp(dir.path / "run_summary.json");
        const auto doc = nlohmann::json::parse(summary);
        CHECK(doc.at("seed").get<std::uint64_t>() == config.seed);
        const SimConfig echoed = config_from_json(doc.at("config").dump());
        CHECK(echoed == config);
        CHECK(doc.at("metrics").size() == 2);
    }
    SUBCASE("population dump parses and matches the population size") {
        const auto doc = nlohmann::json::parse(slurp(dir.path / "population.json"));
        REQUIRE(doc.is_array());
        CHECK(doc.size() == 8);
        CHECK(doc[0].at("id") == "agent_0");
        CHECK(doc[0].at("beliefs").contains("security_threat"));
    }
}

TEST_CASE("full outputs are byte-identical across runs") {
    TempDir dir_a("det_a");
    TempDir dir_b("det_b");
    const SimConfig config = stub_config(15, 5);
    write_outputs(run_simulation(config, assets_for_days(5)), config, dir_a.path.string());
    write_outputs(run_simulation(config, assets_for_days(5)), config, dir_b.path.string());
    CHECK(slurp(dir_a.path / "panel.csv") == slurp(dir_b.path / "panel.csv"));
    CHECK(slurp(dir_a.path / "metrics.csv") == slurp(dir_b.path / "metrics.csv"));
    CHECK(slurp(dir_a.path / "graph.edgelist") == slurp(dir_b.path / "graph.edgelist"));
    CHECK(slurp(dir_a.path / "population.json") == slurp(dir_b.path / "population.json"));
}

TEST_CASE("environment overrides") {
    setenv("DISCOURSE_BASE_URL", "http://elsewhere:1234", 1);
    setenv("DISCOURSE_OFFLINE", "1", 1);
    SimConfig config;
    apply_env_overrides(config);
    CHECK(config.base_url == "http://elsewhere:1234");
    CHECK(config.offline);

    setenv("DISCOURSE_OFFLINE", "0", 1);
    apply_env_overrides(config);
    CHECK_FALSE(config.offline);

    unsetenv("DISCOURSE_BASE_URL");
    unsetenv("DISCOURSE_OFFLINE");
    SimConfig untouched;
    apply_env_overrides(untouched);
    CHECK(untouched == SimConfig{});
}

TEST_CASE("remote backend config needs an endpoint") {
    SimConfig config;
    config.backend = BackendKind::remote;
    config.base_url = "";
    CHECK_THROWS_AS(validate_config(config), ConfigError);
    config.base_url = "http://localhost:11434";
    config.model_name = "";
    CHECK_THROWS_AS(validate_config(config), ConfigError);
}

TEST_CASE("load_assets falls back to bundled fixtures") {
    SimConfig config = stub_config(10, 15);
    const RunAssets assets = load_assets(config);
    CHECK(assets.timeline.entries.size() == 15);
    CHECK(assets.news_snippets.size() == 15);
    CHECK(assets.lexicon.threat_terms == default_lexicon().threat_terms);

    SUBCASE("day-count mismatch with bundled timeline is caught at load") {
        config.n_days = 14;
        CHECK_THROWS_AS(load_assets(config), LoadError);
    }
}
