#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "discourse/config.hpp"
#include "discourse/population.hpp"
#include "discourse/social_graph.hpp"
#include "discourse/timeline.hpp"

namespace discourse {

// One row per (agent, day). Field order here is the panel.csv column order.
struct PanelRow {
    std::size_t day = 0;
    std::string date;
    std::string agent_id;
    std::string kind;
    std::string post;
    double own_score = 0.0;
    double attitude = 0.0;
    double mood = 0.0;
    double exposure = 0.0;
    double economic_threat = 0.0;
    double cultural_threat = 0.0;
    double security_threat = 0.0;
    double humanitarian = 0.0;
    std::string backend_used; // remote | stub | stub_fallback
    std::string evidence_level;
};

struct DailyMetrics {
    std::size_t day = 0;
    double mean_attitude = 0.0;
    double polarization = 0.0; // population standard deviation of attitudes
    double mean_mood = 0.0;
    double mean_exposure = 0.0;
    std::array<double, 4> kind_mean_attitude{}; // kAgentKinds order; 0 for absent kinds
    std::optional<double> bimodality;           // Sarle's coefficient, behind config flag
};

struct RunAssets {
    Timeline timeline;
    Lexicon lexicon;
    std::unordered_map<std::size_t, std::string> news_snippets; // offline fixture
};

struct SimResult {
    std::vector<Agent> initial_population; // day-0 snapshot, pre-simulation
    std::vector<Agent> agents;             // final state
    SocialGraph graph;
    std::vector<PanelRow> panel;
    std::vector<DailyMetrics> metrics;
};

// Resolves timeline / lexicon / news fixture from config paths, falling back
// to the bundled fixtures. Enforces timeline length == n_days (skipped for
// zero-day runs, which need no timeline entries).
RunAssets load_assets(const SimConfig& config);

// Full T x N run. Phase 1 of each day (observe, generate, score) and phase 2
// (belief update) each fan out over a bounded worker pool with a barrier in
// between; stub-mode output is a pure function of the config, regardless of
// worker count.
SimResult run_simulation(const SimConfig& config);
SimResult run_simulation(const SimConfig& config, const RunAssets& assets);

DailyMetrics metrics_from_values(std::size_t day, std::span<const AgentKind> kinds,
                                 std::span<const double> attitudes,
                                 std::span<const double> moods,
                                 std::span<const double> exposures, bool with_bimodality);

DailyMetrics compute_metrics(const std::vector<Agent>& agents, std::size_t day,
                             bool with_bimodality = false);

std::string panel_csv_header();
std::string panel_row_csv(const PanelRow& row);
std::string metrics_csv_header(bool with_bimodality);
std::string metrics_row_csv(const DailyMetrics& metrics);

// Writes panel.csv, metrics.csv, run_summary.json, graph.edgelist and
// population.json into out_dir (created if missing). I/O failures throw
// std::runtime_error naming the path.
void write_outputs(const SimResult& result, const SimConfig& config,
                   const std::string& out_dir);

std::string population_json(const std::vector<Agent>& agents, int indent = 2);

} // namespace discourse
