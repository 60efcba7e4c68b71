#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace e2dev::csv {

// Plain comma separated fields; no quoting (none of our files need it).
std::vector<std::string> split(std::string_view line);

// Throws ValidationError naming `what` on anything but a full match.
std::uint64_t parse_u64(std::string_view s, std::string_view what);
double parse_double(std::string_view s, std::string_view what);

// Reads the header line and checks it; returns the remaining non-empty lines
// paired with their 1-based line numbers.
struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};
std::vector<Line> read(std::istream& in, std::string_view expected_header, std::string_view what);

}  // namespace e2dev::csv
