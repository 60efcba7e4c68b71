#include "e2dev/common/csv.hpp"

#include <charconv>

#include "e2dev/common/error.hpp"

namespace e2dev::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  for (;;) {
    const auto comma = line.find(',');
    out.emplace_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError(std::string(what) + ": not a non-negative integer: '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
    throw ValidationError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<Line> read(std::istream& in, std::string_view expected_header, std::string_view what) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(std::string(what) + ": empty file");
  if (trim(line) != expected_header) {
    throw ValidationError(std::string(what) + ": unexpected header '" + std::string(trim(line)) + "'");
  }
  const auto columns = split(expected_header).size();
  std::vector<Line> out;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    auto fields = split(line);
    if (fields.size() != columns) {
      throw ValidationError(std::string(what) + " line " + std::to_string(n) + ": expected " +
                            std::to_string(columns) + " fields, got " + std::to_string(fields.size()));
    }
    out.push_back({n, std::move(fields)});
  }
  return out;
}

}  // namespace e2dev::csv
