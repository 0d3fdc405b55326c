#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace discourse {

// Shortest round-trip representation (std::to_chars), locale-independent.
// Used everywhere a double becomes text so outputs are byte-stable.
std::string format_double(double value);

// Byte-limited truncation that never splits a UTF-8 code point.
std::string truncate_utf8(std::string_view text, std::size_t max_bytes);

std::vector<std::string> split_words(std::string_view text);

// First max_words whitespace-delimited tokens, joined by single spaces.
std::string truncate_words(std::string_view text, std::size_t max_words);

// Drops <script>/<style> blocks and tags, decodes common entities,
// collapses whitespace.
std::string strip_html(std::string_view html);

std::string percent_encode(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace discourse
