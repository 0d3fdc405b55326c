#include "discourse/timeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace discourse {

std::string_view to_string(EvidenceLevel level) {
    switch (level) {
        case EvidenceLevel::verified: return "verified";
        case EvidenceLevel::contextually_supported: return "contextually_supported";
        case EvidenceLevel::inferred: return "inferred";
    }
    throw std::logic_error("invalid EvidenceLevel");
}

EvidenceLevel evidence_level_from_string(std::string_view name) {
    for (EvidenceLevel level : {EvidenceLevel::verified, EvidenceLevel::contextually_supported,
                                EvidenceLevel::inferred}) {
        if (to_string(level) == name) return level;
    }
    throw LoadError("unknown evidence level: \"" + std::string(name) + "\"");
}

std::string_view to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::pro_immigration: return "pro_immigration";
        case SentimentLabel::anti_immigration: return "anti_immigration";
        case SentimentLabel::neutral: return "neutral";
    }
    throw std::logic_error("invalid SentimentLabel");
}

Lexicon default_lexicon() {
    Lexicon lex;
    lex.threat_terms = {"arson", "attack", "violence", "crime",
                        "danger", "get them out", "deportation", "deport"};
    lex.humanitarian_terms = {"refugee", "asylum", "rights", "children",
                              "family", "compassion", "solidarity", "waiting"};
    lex.pro_terms = {"welcome", "solidarity", "refugee rights",
                     "compassion", "diversity", "welcome refugees"};
    lex.anti_terms = {"ireland is full", "get them out", "deport",
                      "invasion", "illegal", "send them back"};
    lex.economic_terms = {"jobs", "housing", "rent", "wages", "cost of living", "economy"};
    lex.cultural_terms = {"culture", "identity", "tradition", "integration", "values"};
    return lex;
}

namespace {

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool boundary_ok(std::string_view text, std::size_t pos, std::size_t len) {
    const bool left = pos == 0 || !is_word_char(text[pos - 1]);
    const bool right = pos + len == text.size() || !is_word_char(text[pos + len]);
    return left && right;
}

bool is_multi_word(std::string_view phrase) {
    return phrase.find(' ') != std::string_view::npos;
}

// Non-overlapping left-to-right occurrences of one phrase.
std::size_t count_one(std::string_view text, std::string_view phrase) {
    if (phrase.empty()) return 0;
    const bool need_boundary = is_multi_word(phrase);
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(phrase, pos)) != std::string_view::npos) {
        if (!need_boundary || boundary_ok(text, pos, phrase.size())) {
            ++count;
            pos += phrase.size();
        } else {
            pos += 1;
        }
    }
    return count;
}

// Single pass, longest phrase wins at each position, matched spans consumed.
std::size_t count_longest_match(std::string_view text, const std::vector<std::string>& phrases) {
    std::vector<std::string> sorted(phrases.begin(), phrases.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t matched = 0;
        for (const auto& phrase : sorted) {
            if (phrase.empty() || phrase.size() > text.size() - pos) continue;
            if (text.compare(pos, phrase.size(), phrase) != 0) continue;
            if (is_multi_word(phrase) && !boundary_ok(text, pos, phrase.size())) continue;
            matched = phrase.size();
            break;
        }
        if (matched > 0) {
            ++count;
            pos += matched;
        } else {
            ++pos;
        }
    }
    return count;
}

} // namespace

std::size_t count_keywords(std::string_view text, const std::vector<std::string>& phrases,
                           bool longest_match_only) {
    const std::string lowered = to_lower(text);
    std::vector<std::string> lowered_phrases;
    lowered_phrases.reserve(phrases.size());
    for (const auto& p : phrases) lowered_phrases.push_back(to_lower(p));

    if (longest_match_only) return count_longest_match(lowered, lowered_phrases);

    std::size_t total = 0;
    for (const auto& phrase : lowered_phrases) total += count_one(lowered, phrase);
    return total;
}

double threat_salience(std::string_view text, double emotional_reactivity,
                       const Lexicon& lexicon, double per_keyword) {
    const auto count = count_keywords(text, lexicon.threat_terms, lexicon.longest_match_only);
    return static_cast<double>(count) * per_keyword * emotional_reactivity;
}

double humanitarian_salience(std::string_view text, double emotional_reactivity,
                             double openness, const Lexicon& lexicon, double per_keyword) {
    const auto count =
        count_keywords(text, lexicon.humanitarian_terms, lexicon.longest_match_only);
    return static_cast<double>(count) * per_keyword * emotional_reactivity * openness;
}

Sentiment classify_sentiment(std::string_view text, const Lexicon& lexicon) {
    Sentiment s;
    s.pro_count = count_keywords(text, lexicon.pro_terms, lexicon.longest_match_only);
    s.anti_count = count_keywords(text, lexicon.anti_terms, lexicon.longest_match_only);
    if (s.pro_count > s.anti_count) {
        s.label = SentimentLabel::pro_immigration;
    } else if (s.anti_count > s.pro_count) {
        s.label = SentimentLabel::anti_immigration;
    } else {
        s.label = SentimentLabel::neutral;
    }
    const std::size_t total = s.pro_count + s.anti_count;
    s.confidence = total == 0
                       ? 0.0
                       : static_cast<double>(s.pro_count > s.anti_count
                                                 ? s.pro_count - s.anti_count
                                                 : s.anti_count - s.pro_count) /
                             static_cast<double>(total);
    return s;
}

namespace {

bool valid_iso_date(const std::string& date) {
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(date[i]))) return false;
    }
    const int month = (date[5] - '0') * 10 + (date[6] - '0');
    const int day = (date[8] - '0') * 10 + (date[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Timeline parse_timeline(const std::string& json_text, std::optional<std::size_t> expected_days) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(std::string("timeline: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("critical_event") || !doc.contains("entries")) {
        throw LoadError("timeline: expected object with \"critical_event\" and \"entries\"");
    }
    if (!doc["critical_event"].is_string()) {
        throw LoadError("timeline: \"critical_event\" must be a string");
    }
    if (!doc["entries"].is_array()) {
        throw LoadError("timeline: \"entries\" must be an array");
    }

    Timeline tl;
    tl.critical_event = doc["critical_event"].get<std::string>();

    const auto& entries = doc["entries"];
    tl.entries.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        const std::string where = "timeline: entries[" + std::to_string(i) + "]: ";
        if (!e.is_object()) throw LoadError(where + "expected object");
        for (const char* key : {"day", "date", "text", "evidence"}) {
            if (!e.contains(key)) throw LoadError(where + "missing \"" + key + "\"");
        }
        DayEntry entry;
        if (!e["day"].is_number_integer() || e["day"].get<long long>() < 0) {
            throw LoadError(where + "\"day\" must be a non-negative integer");
        }
        entry.day_index = e["day"].get<std::size_t>();
        entry.date = e["date"].get<std::string>();
        if (!valid_iso_date(entry.date)) {
            throw LoadError(where + "\"date\" must be YYYY-MM-DD, got \"" + entry.date + "\"");
        }
        entry.text = e["text"].get<std::string>();
        entry.evidence = evidence_level_from_string(e["evidence"].get<std::string>());
        tl.entries.push_back(std::move(entry));
    }

    for (std::size_t i = 0; i < tl.entries.size(); ++i) {
        const std::string where = "timeline: entries[" + std::to_string(i) + "]: ";
        if (tl.entries[i].day_index != i) {
            // covers duplicates, gaps and out-of-order days in one check
            throw LoadError(where + "expected day " + std::to_string(i) + ", got " +
                            std::to_string(tl.entries[i].day_index));
        }
        if (i > 0 && !(tl.entries[i - 1].date < tl.entries[i].date)) {
            throw LoadError(where + "dates must be strictly increasing (" +
                            tl.entries[i - 1].date + " then " + tl.entries[i].date + ")");
        }
    }

    if (expected_days && tl.entries.size() != *expected_days) {
        throw LoadError("timeline: has " + std::to_string(tl.entries.size()) +
                        " entries but the run is configured for " +
                        std::to_string(*expected_days) + " days");
    }
    return tl;
}

Timeline load_timeline(const std::string& path, std::optional<std::size_t> expected_days) {
    try {
        return parse_timeline(read_file(path), expected_days);
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

Lexicon parse_lexicon(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(std::string("lexicon: ") + e.what());
    }
    if (!doc.is_object()) throw LoadError("lexicon: expected a JSON object");

    Lexicon lex = default_lexicon();
    const std::array<std::tuple<const char*, std::vector<std::string>*, bool>, 6> fields = {{
        {"threat_terms", &lex.threat_terms, true},
        {"humanitarian_terms", &lex.humanitarian_terms, true},
        {"pro_terms", &lex.pro_terms, true},
        {"anti_terms", &lex.anti_terms, true},
        {"economic_terms", &lex.economic_terms, false},
        {"cultural_terms", &lex.cultural_terms, false},
    }};
    for (const auto& [key, target, required_non_empty] : fields) {
        if (!doc.contains(key)) continue;
        if (!doc[key].is_array()) throw LoadError(std::string("lexicon: \"") + key + "\" must be an array");
        std::vector<std::string> phrases;
        for (const auto& item : doc[key]) {
            if (!item.is_string()) throw LoadError(std::string("lexicon: \"") + key + "\" entries must be strings");
            phrases.push_back(item.get<std::string>());
        }
        if (required_non_empty && phrases.empty()) {
            throw LoadError(std::string("lexicon: \"") + key + "\" must not be empty");
        }
        *target = std::move(phrases);
    }
    if (doc.contains("longest_match_only")) {
        if (!doc["longest_match_only"].is_boolean()) {
            throw LoadError("lexicon: \"longest_match_only\" must be a boolean");
        }
        lex.longest_match_only = doc["longest_match_only"].get<bool>();
    }
    for (const auto& [key, value] : doc.items()) {
        static const std::array<std::string_view, 7> known = {
            "threat_terms", "humanitarian_terms", "pro_terms", "anti_terms",
            "economic_terms", "cultural_terms", "longest_match_only"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw LoadError("lexicon: unknown key \"" + key + "\"");
        }
    }
    return lex;
}

Lexicon load_lexicon(const std::string& path) {
    try {
        return parse_lexicon(read_file(path));
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

} // namespace discourse
