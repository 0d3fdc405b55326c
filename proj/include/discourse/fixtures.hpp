#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>

#include "discourse/timeline.hpp"

namespace discourse::fixtures {

// Bundled 15-day default scenario (Dublin, April 26 - May 10 2025). Fixture
// data for out-of-the-box runs, not a verbatim record of real coverage.
const std::string& timeline_json();

// Offline search-result snippets keyed by day index, JSON {"0": "...", ...}.
const std::string& news_snippets_json();

// Default lexicon serialized to the override-file schema.
std::string lexicon_json();

Timeline default_timeline();

std::unordered_map<std::size_t, std::string> parse_news_fixture(const std::string& json_text);
std::unordered_map<std::size_t, std::string> load_news_fixture(const std::string& path);
std::unordered_map<std::size_t, std::string> default_news_fixture();

} // namespace discourse::fixtures
