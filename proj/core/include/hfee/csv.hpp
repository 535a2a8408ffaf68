#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hfee {

/// Shortest decimal form that parses back to exactly the same double.
/// This is the one formatter used for every numeric field the library
/// writes (CSV, SVG coordinates), so equal values always serialize to
/// equal bytes.
std::string format_double(double value);

/// Strict decimal parse: the whole field must be consumed and the result
/// must be finite. Returns nullopt otherwise.
std::optional<double> parse_double(std::string_view field);

/// Splits one CSV line on commas. No quoting in this format.
std::vector<std::string_view> split_csv_fields(std::string_view line);

/// Reads a whole CSV file and hands each data row (1-based line number,
/// fields) to `on_row`. Verifies the exact header and LF line endings.
/// Throws MissingFile, MalformedRow, EmptyStream.
void read_csv(const std::string& path, std::string_view expected_header,
              std::size_t expected_fields,
              const std::function<void(std::size_t line,
                                       const std::vector<std::string_view>& fields)>& on_row);

/// Reads an entire file into a string. Throws MissingFile.
std::string read_file(const std::string& path);

/// Writes bytes to a file, creating parent directories. Throws Error on I/O failure.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace hfee
