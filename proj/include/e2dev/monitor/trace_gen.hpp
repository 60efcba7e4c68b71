#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "e2dev/monitor/config.hpp"
#include "e2dev/node/trace.hpp"

namespace e2dev::monitor {

struct TraceProfile {
  std::string profile = "constant";  // constant | fig5-dl | fig6-ul | random
  std::uint64_t duration_ms = 20000;
  double rate_mbps = 10.0;
  std::uint64_t payload_bytes = 1400;
  std::uint64_t interval_ms = 1000;
  Direction direction = Direction::dl;
  std::string ue_id = "ue1";
  std::uint64_t seed = 0;
  int ues = 3;  // random profile only
};

// Per-second iPerf3 goodput of the two reference experiments, in Mbps: the
// 20 s OAI downlink run and the 19 s srsRAN uplink run.
const std::vector<double>& oai_dl_iperf_mbps();
const std::vector<double>& srsran_ul_iperf_mbps();

// Throws ValidationError on an unknown profile or non-positive rate/payload.
std::vector<node::TraceRow> generate_trace(const TraceProfile& p);

}  // namespace e2dev::monitor
