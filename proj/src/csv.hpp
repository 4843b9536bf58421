#pragma once

#include <string>
#include <vector>

namespace ranslice::detail {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

double parse_double(const std::string& field, const char* what, long line_no);
long parse_long(const std::string& field, const char* what, long line_no);

// Split on commas; no quoting (writers reject names containing commas).
std::vector<std::string> split_fields(const std::string& line);

}  // namespace ranslice::detail
