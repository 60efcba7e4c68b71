#include "e2dev/kpm/types.hpp"

#include <bit>
#include <sstream>

namespace e2dev::kpm {

bool operator==(const MeasValue& a, const MeasValue& b) {
  if (a.index() != b.index()) return false;
  if (a.is_int()) return a.as_int() == b.as_int();
  if (a.is_real()) return std::bit_cast<std::uint64_t>(a.as_real()) == std::bit_cast<std::uint64_t>(b.as_real());
  return true;
}

const std::vector<std::string>& reference_metrics() {
  static const std::vector<std::string> names = {
      metric::kPdcpSduVolumeDl, metric::kPdcpSduVolumeUl, metric::kRlcSduDelayDl,
      metric::kUeThpDl,         metric::kUeThpUl,         metric::kPrbTotDl,
      metric::kPrbTotUl,
  };
  return names;
}

FunctionSummary function_definition_summary(const RanFunctionDefinition& d) {
  FunctionSummary s;
  for (const auto& style : d.styles) s[style.style_id] = style.metrics;
  return s;
}

std::string format_summary(const FunctionSummary& s) {
  std::ostringstream os;
  os << '{';
  bool first_style = true;
  for (const auto& [id, names] : s) {
    if (!first_style) os << ", ";
    first_style = false;
    os << id << ": [";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) os << ", ";
      os << '\'' << names[i] << '\'';
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

RanFunctionDefinition reference_function_definition() {
  RanFunctionDefinition d;
  d.function_name = "ORAN-E2SM-KPM";
  for (std::uint32_t id = 0; id <= kStyleMax; ++id) {
    ReportStyle style{id, {}};
    if (id == kPerUeStyle) style.metrics = reference_metrics();
    d.styles.push_back(std::move(style));
  }
  return d;
}

}  // namespace e2dev::kpm
