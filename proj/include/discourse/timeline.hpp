#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace discourse {

// Raised for any malformed timeline / lexicon / config input.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EvidenceLevel { verified, contextually_supported, inferred };

std::string_view to_string(EvidenceLevel level);
EvidenceLevel evidence_level_from_string(std::string_view name);

struct DayEntry {
    std::size_t day_index = 0;
    std::string date; // ISO "YYYY-MM-DD"
    std::string text;
    EvidenceLevel evidence = EvidenceLevel::verified;
};

struct Timeline {
    std::string critical_event; // constant context, injected into every prompt
    std::vector<DayEntry> entries;
};

// Phrase lists driving salience and the stub sentiment scorer. Matching is
// case-insensitive. With longest_match_only (off by default) overlapping
// phrases within one list consume text left-to-right, longest phrase first,
// instead of being counted independently.
struct Lexicon {
    std::vector<std::string> threat_terms;
    std::vector<std::string> humanitarian_terms;
    std::vector<std::string> pro_terms;
    std::vector<std::string> anti_terms;
    // Consulted only by the opt-in economic/cultural belief-update extension;
    // may be empty, unlike the four core lists.
    std::vector<std::string> economic_terms;
    std::vector<std::string> cultural_terms;
    bool longest_match_only = false;
};

Lexicon default_lexicon();

// Parses and validates {"critical_event": ..., "entries": [...]}. Entries
// must cover day indices 0..len-1 exactly once with strictly increasing
// dates. When expected_days is set, a length mismatch is a LoadError.
Timeline parse_timeline(const std::string& json_text,
                        std::optional<std::size_t> expected_days = std::nullopt);
Timeline load_timeline(const std::string& path,
                       std::optional<std::size_t> expected_days = std::nullopt);

// Optional override file with any of the four phrase arrays plus
// "longest_match_only"; omitted fields keep their defaults.
Lexicon parse_lexicon(const std::string& json_text);
Lexicon load_lexicon(const std::string& path);

// Case-insensitive count of total phrase occurrences in text. Single-word
// phrases match as plain substrings ("deport" also scores inside
// "deportation"); multi-word phrases additionally require word boundaries.
// Occurrences of one phrase are counted non-overlapping left-to-right, and
// each listed phrase is counted independently of the others unless
// longest_match_only is set.
std::size_t count_keywords(std::string_view text, const std::vector<std::string>& phrases,
                           bool longest_match_only = false);

// keyword count * per_keyword * emotional_reactivity
double threat_salience(std::string_view text, double emotional_reactivity,
                       const Lexicon& lexicon = default_lexicon(),
                       double per_keyword = 0.06);

// keyword count * per_keyword * emotional_reactivity * openness
double humanitarian_salience(std::string_view text, double emotional_reactivity,
                             double openness, const Lexicon& lexicon = default_lexicon(),
                             double per_keyword = 0.06);

enum class SentimentLabel { pro_immigration, anti_immigration, neutral };

std::string_view to_string(SentimentLabel label);

struct Sentiment {
    SentimentLabel label = SentimentLabel::neutral;
    double confidence = 0.0; // |pro - anti| / (pro + anti), 0 when no hits
    std::size_t pro_count = 0;
    std::size_t anti_count = 0;
};

Sentiment classify_sentiment(std::string_view text, const Lexicon& lexicon = default_lexicon());

} // namespace discourse
