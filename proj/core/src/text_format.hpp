#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roadaccess::detail {

std::string_view trim(std::string_view s) noexcept;
std::string lower(std::string_view s);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
std::string csv_field(std::string_view s);

}  // namespace roadaccess::detail
