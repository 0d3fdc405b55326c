#include "discourse/text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace discourse {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf.data(), res.ptr);
}

std::string truncate_utf8(std::string_view text, std::size_t max_bytes) {
    if (text.size() <= max_bytes) return std::string(text);
    std::size_t end = max_bytes;
    // back off any continuation bytes so we cut on a code point boundary
    while (end > 0 && (static_cast<unsigned char>(text[end]) & 0xC0) == 0x80) --end;
    return std::string(text.substr(0, end));
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) words.emplace_back(text.substr(start, i - start));
    }
    return words;
}

std::string truncate_words(std::string_view text, std::size_t max_words) {
    const auto words = split_words(text);
    const std::size_t n = std::min(words.size(), max_words);
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += ' ';
        out += words[i];
    }
    return out;
}

namespace {

// case-insensitive search for a literal marker
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from) {
    if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
    for (std::size_t i = from; i + needle.size() <= haystack.size(); ++i) {
        bool hit = true;
        for (std::size_t j = 0; j < needle.size(); ++j) {
            if (std::tolower(static_cast<unsigned char>(haystack[i + j])) !=
                std::tolower(static_cast<unsigned char>(needle[j]))) {
                hit = false;
                break;
            }
        }
        if (hit) return i;
    }
    return std::string_view::npos;
}

std::string drop_blocks(std::string text, std::string_view open_tag, std::string_view close_tag) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = ifind(text, open_tag, pos);
        if (start == std::string_view::npos) {
            out += text.substr(pos);
            break;
        }
        out += text.substr(pos, start - pos);
        const std::size_t stop = ifind(text, close_tag, start);
        if (stop == std::string_view::npos) break; // unterminated block, drop the rest
        pos = stop + close_tag.size();
    }
    return out;
}

} // namespace

std::string strip_html(std::string_view html) {
    std::string text = drop_blocks(std::string(html), "<script", "</script>");
    text = drop_blocks(std::move(text), "<style", "</style>");

    std::string no_tags;
    no_tags.reserve(text.size());
    bool in_tag = false;
    for (char c : text) {
        if (c == '<') {
            in_tag = true;
            no_tags += ' ';
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            no_tags += c;
        }
    }

    static const std::array<std::pair<std::string_view, std::string_view>, 6> entities = {{
        {"&amp;", "&"}, {"&lt;", "<"}, {"&gt;", ">"},
        {"&quot;", "\""}, {"&#39;", "'"}, {"&nbsp;", " "},
    }};
    for (const auto& [from, to] : entities) {
        std::size_t pos = 0;
        while ((pos = no_tags.find(from, pos)) != std::string::npos) {
            no_tags.replace(pos, from.size(), to);
            pos += to.size();
        }
    }

    std::string collapsed;
    collapsed.reserve(no_tags.size());
    bool prev_space = true;
    for (char c : no_tags) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!prev_space) collapsed += ' ';
            prev_space = true;
        } else {
            collapsed += c;
            prev_space = false;
        }
    }
    while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
    return collapsed;
}

std::string percent_encode(std::string_view text) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        const bool unreserved = std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
        if (unreserved) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 0xF];
        }
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace discourse
