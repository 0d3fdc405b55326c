#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "discourse/agent.hpp"
#include "discourse/timeline.hpp"

namespace discourse {

inline constexpr std::size_t kNewsSnippetBudget = 1200; // characters
inline constexpr std::size_t kPostWordLimit = 40;
inline constexpr std::size_t kMemoryPosts = 5;
inline constexpr std::size_t kMemoryQuoteChars = 100;
inline constexpr const char* kSearchUnavailable = "[search unavailable]";

class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Observation {
    std::string news_snippet; // <= kNewsSnippetBudget characters
    std::string memory_summary;
    std::string day_entry_text;
    std::string critical_event;
};

enum class BackendKind { remote, stub };

// Text-completion capability behind the OTA loop. The remote implementation
// talks to a model server; the stub is a pure function of (prompt, seed) so
// offline runs are bit-reproducible.
class GenerationBackend {
public:
    virtual ~GenerationBackend() = default;
    virtual std::string generate(const std::string& prompt, double temperature) = 0;
    virtual BackendKind kind() const = 0;
};

// Deterministic offline backend. Posts follow a fixed template,
// "<stance phrase> about <day topic> <quirk marker>", where the stance
// phrase comes from the anti lexicon when the prompt's attitude is above
// +0.2, the pro lexicon below -0.2, and a neutral phrase list in between.
// That keeps stub posts correlated with internal attitude so the lexicon
// scorer closes the loop in offline runs.
class StubBackend : public GenerationBackend {
public:
    explicit StubBackend(std::uint64_t seed, Lexicon lexicon = default_lexicon());

    std::string generate(const std::string& prompt, double temperature) override;
    BackendKind kind() const override { return BackendKind::stub; }

private:
    std::uint64_t seed_;
    Lexicon lexicon_;
};

// Day-keyed snippet source for the observe phase.
class NewsClient {
public:
    virtual ~NewsClient() = default;
    // Plain-text result, truncated to the snippet budget. Implementations
    // return kSearchUnavailable on failure instead of throwing, so a dead
    // search endpoint never aborts a simulation day.
    virtual std::string fetch(const std::string& query, std::size_t day_index) = 0;
};

class FixtureNewsClient : public NewsClient {
public:
    explicit FixtureNewsClient(std::unordered_map<std::size_t, std::string> snippets);
    std::string fetch(const std::string& query, std::size_t day_index) override;

private:
    std::unordered_map<std::size_t, std::string> snippets_;
};

// "Dublin immigration march April 2025 Ireland " + kind-specific terms.
std::string search_query_for(AgentKind kind);

// Summary of at most the last kMemoryPosts posts, quoting the first
// kMemoryQuoteChars characters of the most recent one. Empty history yields
// the fixed "no posting history yet" string.
std::string recall_memory(const std::vector<std::string>& messages);

// Phase 1 of the OTA loop: the orchestrator, not the model, invokes the
// tools. Appends one ToolCallRecord per tool call (search, then recall) to
// agent.reasoning_log. Sentiment analysis is available as an optional third
// tool (classify_sentiment) but is not auto-invoked here.
Observation observe(Agent& agent, const DayEntry& day, const std::string& critical_event,
                    NewsClient& news);

// Deterministic prompt assembly: critical event, labeled profile fields,
// memory, search results, today's news, then the fixed instructions
// (gradual stance evolution, quirk style, 40-word cap). Requires the quirk
// to be assigned already.
std::string build_prompt(const Agent& agent, const Observation& obs);

struct PostResult {
    std::string post;
    bool used_fallback = false;
};

// Runs the backend at gen_temperature and hard-truncates the reply to
// kPostWordLimit words. A remote failure (after the backend's own retry)
// falls back to the stub for this call and is flagged.
PostResult generate_post(GenerationBackend& backend, StubBackend& stub,
                         const std::string& prompt, double gen_temperature = 0.75);

// Scoring prompt presenting the -1 / 0 / +1 anchor scale for one post.
std::string build_scoring_prompt(const std::string& post);

// First float-like token (optional sign, digits, optional decimal part) of
// a model reply, clipped to [-1, 1]; anything unparseable scores 0.0.
double parse_score_reply(std::string_view reply);

// Deterministic offline scoring: (anti - pro) / max(1, anti + pro).
double lexicon_score(std::string_view post, const Lexicon& lexicon = default_lexicon());

struct ScoreResult {
    double score = 0.0;
    bool used_fallback = false;
};

// Remote backends are asked at score_temperature (0.0: deterministic) and
// the reply parsed; stub backends score via the lexicon directly. Remote
// failure falls back to the lexicon path and is flagged.
ScoreResult score_post(GenerationBackend& backend, const std::string& post,
                       const Lexicon& lexicon = default_lexicon(),
                       double score_temperature = 0.0);

} // namespace discourse
