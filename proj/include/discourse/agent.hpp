#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace discourse {

enum class AgentKind { centrist, pro_imm, far_right, media };

// Canonical kind order used everywhere a per-kind table is iterated:
// apportionment ties, id-block assignment, metrics columns.
inline constexpr std::array<AgentKind, 4> kAgentKinds = {
    AgentKind::centrist, AgentKind::pro_imm, AgentKind::far_right, AgentKind::media};

std::string_view to_string(AgentKind kind);
AgentKind agent_kind_from_string(std::string_view name);

// Writing style assigned once at an agent's first post.
enum class Quirk {
    sarcasm,
    emojis,
    hashtags,
    formal_tone,
    rhetorical_questions,
    all_lowercase,
    statistics_citing,
    personal_anecdote,
};

inline constexpr std::array<Quirk, 8> kQuirks = {
    Quirk::sarcasm,          Quirk::emojis,        Quirk::hashtags,
    Quirk::formal_tone,      Quirk::rhetorical_questions, Quirk::all_lowercase,
    Quirk::statistics_citing, Quirk::personal_anecdote};

std::string_view to_string(Quirk quirk);
Quirk quirk_from_string(std::string_view name);

struct PsychProfile {
    double openness = 0.0;             // [0.1, 1.0], kind-stratified
    double conformity = 0.0;           // [0.3, 0.8]
    double emotional_reactivity = 0.0; // [0.2, 1.0], kind-stratified
    double trust_peers = 0.0;          // [0.4, 0.9]
};

struct BeliefState {
    double economic_threat = 0.0; // [-1, 1]
    double cultural_threat = 0.0; // [-1, 1]
    double security_threat = 0.0; // [-1, 1]
    double humanitarian = 0.0;    // [-1, 1]
};

struct ToolCallRecord {
    std::string tool_name;
    std::string tool_input;
};

struct Agent {
    std::string id;      // "agent_0" ... "agent_{N-1}"
    std::size_t index = 0;
    AgentKind kind = AgentKind::centrist;
    double attitude = 0.0; // [-1, +1]; -1 strongly pro-immigration, +1 strongly anti
    double exposure = 0.0; // [0, 1], non-decreasing
    std::optional<Quirk> quirk;
    BeliefState beliefs;
    PsychProfile psych;
    double mood = 0.0; // [-1, +1]
    std::vector<std::string> messages;
    std::vector<double> attitude_history;
    std::vector<ToolCallRecord> reasoning_log;
};

} // namespace discourse
