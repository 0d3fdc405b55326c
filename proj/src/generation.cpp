#include "discourse/generation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include <json.hpp>

#include "discourse/dynamics.hpp"
#include "discourse/rng.hpp"
#include "discourse/text_util.hpp"

namespace discourse {

namespace {

const char* quirk_marker(Quirk quirk) {
    switch (quirk) {
        case Quirk::sarcasm: return "Oh, brilliant.";
        case Quirk::emojis: return "\xF0\x9F\x99\x82"; // 🙂
        case Quirk::hashtags: return "#Dublin #Ireland";
        case Quirk::formal_tone: return "Sincerely concerned.";
        case Quirk::rhetorical_questions: return "What happens next?";
        case Quirk::all_lowercase: return ""; // style is applied to the whole post
        case Quirk::statistics_citing: return "Numbers tell the story: 62% agree.";
        case Quirk::personal_anecdote: return "I saw it on my street.";
    }
    return "";
}

// phrases free of every lexicon term, so neutral stub posts score 0
const std::vector<std::string>& neutral_phrases() {
    static const std::vector<std::string> phrases = {
        "still weighing it all up",
        "watching how this unfolds",
        "hard to know what to think",
        "following the coverage closely",
    };
    return phrases;
}

// field markers the stub relies on; build_prompt owns this format
constexpr const char* kAttitudeField = "- attitude: ";
constexpr const char* kQuirkField = "- writing quirk: ";
constexpr const char* kTodayField = "TODAY'S NEWS: ";

std::string field_value(const std::string& prompt, std::string_view marker) {
    const std::size_t pos = prompt.find(marker);
    if (pos == std::string::npos) return {};
    const std::size_t start = pos + marker.size();
    const std::size_t end = prompt.find('\n', start);
    return prompt.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

double parse_double_or(const std::string& text, double fallback) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    return end == begin ? fallback : value;
}

} // namespace

StubBackend::StubBackend(std::uint64_t seed, Lexicon lexicon)
    : seed_(seed), lexicon_(std::move(lexicon)) {
    if (lexicon_.pro_terms.empty() || lexicon_.anti_terms.empty()) {
        throw std::invalid_argument("stub backend needs non-empty pro/anti phrase lists");
    }
}

std::string StubBackend::generate(const std::string& prompt, double /*temperature*/) {
    const double attitude = parse_double_or(field_value(prompt, kAttitudeField), 0.0);
    const std::string quirk_label = field_value(prompt, kQuirkField);
    const std::string topic = truncate_words(field_value(prompt, kTodayField), 6);

    const std::vector<std::string>* stance_list = &neutral_phrases();
    if (attitude > 0.2) {
        stance_list = &lexicon_.anti_terms;
    } else if (attitude < -0.2) {
        stance_list = &lexicon_.pro_terms;
    }
    const std::uint64_t h = mix64(seed_ ^ fnv1a64(prompt));
    const std::string& stance = (*stance_list)[h % stance_list->size()];

    std::string post = stance + " about " + (topic.empty() ? "the situation" : topic);
    std::optional<Quirk> quirk;
    if (!quirk_label.empty()) {
        try {
            quirk = quirk_from_string(quirk_label);
        } catch (const std::invalid_argument&) {
            quirk.reset(); // prompt not ours, no styling
        }
    }
    if (quirk) {
        if (*quirk == Quirk::all_lowercase) {
            std::transform(post.begin(), post.end(), post.begin(), [](unsigned char c) {
                return static_cast<char>(std::tolower(c));
            });
        } else {
            post += ' ';
            post += quirk_marker(*quirk);
        }
    }
    return post;
}

FixtureNewsClient::FixtureNewsClient(std::unordered_map<std::size_t, std::string> snippets)
    : snippets_(std::move(snippets)) {}

std::string FixtureNewsClient::fetch(const std::string& /*query*/, std::size_t day_index) {
    const auto it = snippets_.find(day_index);
    if (it == snippets_.end()) return kSearchUnavailable;
    return truncate_utf8(it->second, kNewsSnippetBudget);
}

std::string search_query_for(AgentKind kind) {
    std::string query = "Dublin immigration march April 2025 Ireland ";
    switch (kind) {
        case AgentKind::far_right: query += "protest housing crisis"; break;
        case AgentKind::pro_imm: query += "refugee rights solidarity"; break;
        case AgentKind::centrist: query += "government response"; break;
        case AgentKind::media: query += "news coverage"; break;
    }
    return query;
}

std::string recall_memory(const std::vector<std::string>& messages) {
    if (messages.empty()) return "no posting history yet";

    const std::size_t window = std::min(messages.size(), kMemoryPosts);
    const std::size_t first = messages.size() - window;
    std::string summary = "You have posted " + std::to_string(messages.size()) +
                          " time(s). Your last " + std::to_string(window) +
                          " post(s), oldest first:";
    for (std::size_t i = 0; i < window; ++i) {
        summary += " " + std::to_string(i + 1) + ") \"" +
                   truncate_utf8(messages[first + i], 80) + "\"";
    }
    summary += " Most recent post (first " + std::to_string(kMemoryQuoteChars) +
               " chars): \"" + truncate_utf8(messages.back(), kMemoryQuoteChars) + "\"";
    return summary;
}

Observation observe(Agent& agent, const DayEntry& day, const std::string& critical_event,
                    NewsClient& news) {
    Observation obs;
    obs.critical_event = critical_event;
    obs.day_entry_text = day.text;

    const std::string query = search_query_for(agent.kind);
    obs.news_snippet = truncate_utf8(news.fetch(query, day.day_index), kNewsSnippetBudget);
    agent.reasoning_log.push_back({"search_immigration_news", query});

    nlohmann::json recent = nlohmann::json::array();
    const std::size_t window = std::min(agent.messages.size(), kMemoryPosts);
    for (std::size_t i = agent.messages.size() - window; i < agent.messages.size(); ++i) {
        recent.push_back(agent.messages[i]);
    }
    obs.memory_summary = recall_memory(agent.messages);
    agent.reasoning_log.push_back({"recall_agent_memory", recent.dump()});

    return obs;
}

std::string build_prompt(const Agent& agent, const Observation& obs) {
    if (!agent.quirk.has_value()) {
        throw std::logic_error("build_prompt: agent " + agent.id + " has no quirk assigned");
    }
    const BeliefState& b = agent.beliefs;
    const PsychProfile& p = agent.psych;
    std::string prompt;
    prompt += "You are " + agent.id + ", a social media user in Ireland.\n\n";
    prompt += "BACKGROUND EVENT (ongoing context):\n" + obs.critical_event + "\n\n";
    prompt += "YOUR PROFILE:\n";
    prompt += "- kind: " + std::string(to_string(agent.kind)) + "\n";
    prompt += std::string(kAttitudeField) + format_double(agent.attitude) +
              " (-1 = strongly pro-immigration, +1 = strongly anti-immigration)\n";
    prompt += "- mood: " + format_double(agent.mood) + "\n";
    prompt += "- beliefs: economic_threat=" + format_double(b.economic_threat) +
              ", cultural_threat=" + format_double(b.cultural_threat) +
              ", security_threat=" + format_double(b.security_threat) +
              ", humanitarian=" + format_double(b.humanitarian) + "\n";
    prompt += "- psychology: openness=" + format_double(p.openness) +
              ", conformity=" + format_double(p.conformity) +
              ", emotional_reactivity=" + format_double(p.emotional_reactivity) +
              ", trust_peers=" + format_double(p.trust_peers) + "\n";
    prompt += std::string(kQuirkField) + std::string(to_string(*agent.quirk)) + "\n\n";
    prompt += "YOUR MEMORY: " + obs.memory_summary + "\n\n";
    prompt += "SEARCH RESULTS: " + obs.news_snippet + "\n\n";
    prompt += std::string(kTodayField) + obs.day_entry_text + "\n\n";
    prompt += "TASK: Write one social media post of at most 40 words reacting to today's "
              "news, in character. Let your stance evolve gradually from your current "
              "attitude; no overnight flips. Write in your quirk style: " +
              std::string(to_string(*agent.quirk)) + ".";
    return prompt;
}

PostResult generate_post(GenerationBackend& backend, StubBackend& stub,
                         const std::string& prompt, double gen_temperature) {
    PostResult result;
    if (backend.kind() == BackendKind::stub) {
        result.post = backend.generate(prompt, gen_temperature);
    } else {
        try {
            result.post = backend.generate(prompt, gen_temperature);
        } catch (const BackendError&) {
            result.post = stub.generate(prompt, gen_temperature);
            result.used_fallback = true;
        }
    }
    result.post = truncate_words(result.post, kPostWordLimit);
    return result;
}

std::string build_scoring_prompt(const std::string& post) {
    std::string prompt;
    prompt += "Score the following social media post for its stance on immigration.\n";
    prompt += "Scale:\n";
    prompt += "-1.0 = strongly pro-immigration (solidarity messaging, support for refugee "
              "rights)\n";
    prompt += " 0.0 = neutral or ambivalent (reporting facts without taking a side)\n";
    prompt += "+1.0 = strongly anti-immigration ('Ireland is full' rhetoric, demands for "
              "deportation)\n";
    prompt += "Reply with a single number between -1.0 and +1.0 and nothing else.\n";
    prompt += "POST: " + post;
    return prompt;
}

double parse_score_reply(std::string_view reply) {
    for (std::size_t i = 0; i < reply.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(reply[i]))) continue;
        std::size_t start = i;
        if (start > 0 && (reply[start - 1] == '-' || reply[start - 1] == '+')) --start;
        std::size_t end = i;
        while (end < reply.size() && std::isdigit(static_cast<unsigned char>(reply[end]))) ++end;
        if (end < reply.size() && reply[end] == '.') {
            ++end;
            while (end < reply.size() && std::isdigit(static_cast<unsigned char>(reply[end])))
                ++end;
        }
        // std::from_chars rejects a leading '+'
        const std::size_t begin = reply[start] == '+' ? start + 1 : start;
        double value = 0.0;
        const auto res = std::from_chars(reply.data() + begin, reply.data() + end, value);
        if (res.ec != std::errc{}) return 0.0;
        return clip(value, -1.0, 1.0);
    }
    return 0.0;
}

double lexicon_score(std::string_view post, const Lexicon& lexicon) {
    const Sentiment s = classify_sentiment(post, lexicon);
    const double anti = static_cast<double>(s.anti_count);
    const double pro = static_cast<double>(s.pro_count);
    const double denom = std::max(1.0, anti + pro);
    return (anti - pro) / denom;
}

ScoreResult score_post(GenerationBackend& backend, const std::string& post,
                       const Lexicon& lexicon, double score_temperature) {
    ScoreResult result;
    if (backend.kind() == BackendKind::stub) {
        result.score = lexicon_score(post, lexicon);
        return result;
    }
    try {
        const std::string reply = backend.generate(build_scoring_prompt(post), score_temperature);
        result.score = parse_score_reply(reply);
    } catch (const BackendError&) {
        result.score = lexicon_score(post, lexicon);
        result.used_fallback = true;
    }
    return result;
}

} // namespace discourse
