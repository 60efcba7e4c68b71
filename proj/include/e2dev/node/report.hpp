#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "e2dev/kpm/types.hpp"
#include "e2dev/node/trace.hpp"

namespace e2dev::node {

struct OverheadModel {
  std::uint64_t header_overhead_bytes = 43;  // 40 TCP/IPv4 + 3 PDCP
};

inline std::uint64_t pdcp_bytes(std::uint64_t app_bytes, std::uint64_t pkts, const OverheadModel& m) {
  return app_bytes + pkts * m.header_overhead_bytes;
}

// One granularity period of one UE. Metrics the node does not know produce
// no_value and bump *unknown_metrics.
kpm::MeasRecord compute_record(std::span<const TraceRow> rows, std::uint64_t granularity_ms,
                               const std::vector<std::string>& metrics, const OverheadModel& model,
                               std::uint64_t* unknown_metrics = nullptr);

struct ReportWindow {
  std::uint64_t start_ms = 0;
  std::uint64_t period_ms = 0;
};

std::pair<kpm::IndicationHeader, kpm::IndicationMessage> build_indication(
    const TrafficTrace& trace, const UePresence& presence, const kpm::ActionDefinition& action,
    ReportWindow window, const std::string& sender, const OverheadModel& model,
    std::uint64_t* unknown_metrics = nullptr);

}  // namespace e2dev::node
