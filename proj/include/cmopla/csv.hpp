#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cmopla::csv {

/// Splits one line on commas. Quoting is not supported; none of the
/// toolkit's formats need it.
std::vector<std::string> split(std::string_view line);

std::string join(const std::vector<std::string>& cells);

/// Shortest round-trip decimal form.
std::string format_double(double value);

/// Parses a full cell as a double; nullopt on trailing garbage or empty.
std::optional<double> parse_double(std::string_view cell);

/// Strips a trailing '\r' and surrounding blanks.
std::string_view trim(std::string_view s);

}  // namespace cmopla::csv
