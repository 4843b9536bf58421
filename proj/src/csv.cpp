#include "csv.hpp"

#include <charconv>
#include <stdexcept>

namespace ranslice::detail {
namespace {

[[noreturn]] void bad_field(const std::string& field, const char* what, long line_no) {
  throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + what + " '" +
                              field + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& field, const char* what, long line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) bad_field(field, what, line_no);
  return value;
}

long parse_long(const std::string& field, const char* what, long line_no) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) bad_field(field, what, line_no);
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace ranslice::detail
