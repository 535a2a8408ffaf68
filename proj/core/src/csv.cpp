#include "hfee/csv.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hfee/errors.hpp"

namespace hfee {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view field) {
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_csv_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path);
}

void read_csv(const std::string& path, std::string_view expected_header,
              std::size_t expected_fields,
              const std::function<void(std::size_t, const std::vector<std::string_view>&)>& on_row) {
  const std::string content = read_file(path);

  std::size_t line_no = 0;
  std::size_t data_rows = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    const bool had_newline = eol != std::string::npos;
    if (!had_newline) eol = content.size();
    const std::string_view line(content.data() + pos, eol - pos);
    ++line_no;

    if (line.find('\r') != std::string_view::npos)
      throw MalformedRow(path, line_no, "carriage return in line; LF endings required");

    if (line_no == 1) {
      if (line != expected_header)
        throw MalformedRow(path, 1,
                           "bad header, expected '" + std::string(expected_header) + "'");
    } else if (!line.empty()) {
      const auto fields = split_csv_fields(line);
      if (fields.size() != expected_fields)
        throw MalformedRow(path, line_no,
                           "expected " + std::to_string(expected_fields) + " fields, got " +
                               std::to_string(fields.size()));
      on_row(line_no, fields);
      ++data_rows;
    } else if (had_newline && eol + 1 < content.size()) {
      // Blank line in the middle of the file; only a trailing one is tolerated.
      throw MalformedRow(path, line_no, "blank line");
    }

    pos = eol + 1;
  }

  if (line_no == 0) throw MalformedRow(path, 1, "empty file, header required");
  if (data_rows == 0) throw EmptyStream(path);
}

}  // namespace hfee
