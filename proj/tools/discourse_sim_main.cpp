#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "discourse/engine.hpp"
#include "discourse/fixtures.hpp"
#include "discourse/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;   // bad flags, unreadable or invalid config/inputs
constexpr int kExitRuntime = 2; // failures once a validated run has started

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> days;
    std::optional<std::size_t> agents;
    std::optional<std::string> backend;
    std::optional<std::size_t> k;
    std::optional<double> p;
    bool offline = false;
    std::optional<std::string> out_dir;
    std::optional<std::string> model;
    std::optional<std::string> base_url;
    std::optional<std::string> timeline;
    std::optional<std::string> lexicon;
    std::optional<std::string> news_fixture;
    std::optional<int> workers;
    bool bimodality = false;
};

void add_common_flags(CLI::App& cmd, CliOverrides& o) {
    cmd.add_option("--config", o.config_path, "JSON config file; flags override its values");
    cmd.add_option("--seed", o.seed, "master random seed");
    cmd.add_option("--days", o.days, "number of simulated days");
    cmd.add_option("--agents", o.agents, "population size");
    cmd.add_option("--backend", o.backend, "generation backend: remote or stub");
    cmd.add_option("--k", o.k, "small-world base degree (even)");
    cmd.add_option("--p", o.p, "small-world rewiring probability");
    cmd.add_flag("--offline", o.offline, "use the bundled news fixture instead of live search");
    cmd.add_option("--out", o.out_dir, "output directory");
    cmd.add_option("--model", o.model, "remote model name");
    cmd.add_option("--base-url", o.base_url, "remote generate endpoint base URL");
    cmd.add_option("--timeline", o.timeline, "timeline JSON file (default: bundled fixture)");
    cmd.add_option("--lexicon", o.lexicon, "lexicon override JSON file");
    cmd.add_option("--news-fixture", o.news_fixture, "offline news snippets JSON file");
    cmd.add_option("--workers", o.workers, "worker pool size / max in-flight requests");
    cmd.add_flag("--bimodality", o.bimodality, "add a bimodality column to metrics.csv");
}

discourse::SimConfig resolve_config(const CliOverrides& o, bool validate = true) {
    discourse::SimConfig config;
    if (!o.config_path.empty()) config = discourse::load_config(o.config_path);
    discourse::apply_env_overrides(config);
    if (o.seed) config.seed = *o.seed;
    if (o.days) config.n_days = *o.days;
    if (o.agents) config.n_agents = *o.agents;
    if (o.backend) config.backend = discourse::backend_kind_from_string(*o.backend);
    if (o.k) config.network.k = *o.k;
    if (o.p) config.network.p = *o.p;
    if (o.offline) config.offline = true;
    if (o.out_dir) config.out_dir = *o.out_dir;
    if (o.model) config.model_name = *o.model;
    if (o.base_url) config.base_url = *o.base_url;
    if (o.timeline) config.timeline_path = *o.timeline;
    if (o.lexicon) config.lexicon_path = *o.lexicon;
    if (o.news_fixture) config.news_fixture_path = *o.news_fixture;
    if (o.workers) config.workers = *o.workers;
    if (o.bimodality) config.bimodality = true;
    if (validate) discourse::validate_config(config);
    return config;
}

int cmd_run(const CliOverrides& o) {
    const discourse::SimConfig config = resolve_config(o);
    const discourse::RunAssets assets = discourse::load_assets(config);
    const discourse::SimResult result = discourse::run_simulation(config, assets);
    discourse::write_outputs(result, config, config.out_dir);
    std::cout << "wrote " << result.panel.size() << " panel rows over " << config.n_days
              << " day(s) to " << config.out_dir << "\n";
    return kExitOk;
}

int cmd_validate(const CliOverrides& o) {
    const discourse::SimConfig config = resolve_config(o);
    discourse::load_assets(config);
    std::cout << "config ok: " << config.n_agents << " agents, " << config.n_days
              << " days, backend " << discourse::to_string(config.backend) << "\n";
    return kExitOk;
}

int cmd_dump_population(const CliOverrides& o, const std::string& out_path) {
    // population sampling has no graph prerequisites, so skip full validation
    const discourse::SimConfig config = resolve_config(o, /*validate=*/false);
    const auto agents = discourse::sample_population(config.n_agents, config.seed);
    const std::string doc = discourse::population_json(agents);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
        out << doc;
    } else {
        std::cout << doc;
    }
    return kExitOk;
}

int cmd_dump_fixtures(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
    const auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + dir + "/" + name);
        out << content;
    };
    write("timeline.json", discourse::fixtures::timeline_json() + "\n");
    write("news_snippets.json", discourse::fixtures::news_snippets_json() + "\n");
    write("lexicon.json", discourse::fixtures::lexicon_json());
    std::cout << "wrote timeline.json, news_snippets.json, lexicon.json to " << dir << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(discourse::kEngineName) +
                 " - generative agent-based attitude diffusion simulator"};
    app.set_version_flag("--version", discourse::kEngineVersion);
    app.require_subcommand(1);

    CliOverrides run_opts;
    CLI::App* run = app.add_subcommand("run", "run a full simulation and write outputs");
    add_common_flags(*run, run_opts);

    CliOverrides validate_opts;
    CLI::App* validate =
        app.add_subcommand("validate", "check config, timeline and lexicons without running");
    add_common_flags(*validate, validate_opts);

    CliOverrides dump_opts;
    CLI::App* dump_pop =
        app.add_subcommand("dump-population", "emit the day-0 population as JSON");
    dump_pop->add_option("--config", dump_opts.config_path, "JSON config file");
    dump_pop->add_option("--seed", dump_opts.seed, "master random seed");
    dump_pop->add_option("--agents", dump_opts.agents, "population size");
    std::string dump_out;
    dump_pop->add_option("--out", dump_out, "write to file instead of stdout");

    std::string fixtures_dir = "fixtures";
    CLI::App* dump_fix =
        app.add_subcommand("dump-fixtures", "write the bundled fixture files for editing");
    dump_fix->add_option("--out", fixtures_dir, "target directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (validate->parsed()) return cmd_validate(validate_opts);
        if (dump_pop->parsed()) return cmd_dump_population(dump_opts, dump_out);
        if (dump_fix->parsed()) return cmd_dump_fixtures(fixtures_dir);
    } catch (const discourse::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const discourse::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
