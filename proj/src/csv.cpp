#include "discourse/csv.hpp"

namespace discourse {

std::string csv_escape(std::string_view field, bool always_quote) {
    const bool needs_quote =
        always_quote || field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quote) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace discourse
