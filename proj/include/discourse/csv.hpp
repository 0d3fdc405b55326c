#pragma once

#include <ostream>
#include <string>
#include <string_view>

namespace discourse {

// RFC-4180 field: quoted (with doubled quotes) when it contains a comma,
// quote or newline, or when always_quote is set.
std::string csv_escape(std::string_view field, bool always_quote = false);

} // namespace discourse
