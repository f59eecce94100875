#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trademap::csv {

// Splits one delimited line. Double-quoted fields may contain the delimiter;
// "" inside quotes is an escaped quote. Surrounding whitespace is trimmed.
std::vector<std::string> split_line(std::string_view line, char delimiter = ',');

std::string_view trim(std::string_view s);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

// Quotes a field if it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

}  // namespace trademap::csv
