#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "e2dev/common/error.hpp"

namespace e2dev::monitor {

inline constexpr const char* kThroughputHeader = "t_ms,ue_id,mbps";

struct ThroughputRow {
  std::uint64_t t_ms = 0;
  std::string ue_id;
  double mbps = 0;
  friend bool operator==(const ThroughputRow&, const ThroughputRow&) = default;
};

std::vector<ThroughputRow> read_throughput_csv(std::istream& in);
std::vector<ThroughputRow> read_throughput_file(const std::string& path);
// Six decimals, rows in the given order.
void write_throughput_csv(std::ostream& out, const std::vector<ThroughputRow>& rows);

class MisalignedBins : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct ComparisonRow {
  std::uint64_t t_ms = 0;
  std::string ue_id;
  double app_mbps = 0;
  double kpm_mbps = 0;
  std::optional<double> rel_offset;  // kpm/app - 1; empty when app == 0
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::size_t bins_in_mean = 0;
  double mean_rel_offset = 0;
  double max_abs_offset = 0;  // Mbps
};

// Rows are matched on (t_ms, ue_id); both sides must hold the same keys.
ComparisonReport compare(const std::vector<ThroughputRow>& app, const std::vector<ThroughputRow>& kpm);
std::string format_report(const ComparisonReport& r);

}  // namespace e2dev::monitor
