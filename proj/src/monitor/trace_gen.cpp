#include "e2dev/monitor/trace_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "e2dev/common/error.hpp"

namespace e2dev::monitor {

const std::vector<double>& oai_dl_iperf_mbps() {
  static const std::vector<double> kSeries{277, 241, 325, 493, 482, 514, 524, 514, 440, 535,
                                           535, 566, 556, 556, 377, 409, 524, 482, 524, 451};
  return kSeries;
}

const std::vector<double>& srsran_ul_iperf_mbps() {
  static const std::vector<double> kSeries{9.5,  10.8, 10.7, 9.34, 10.3, 10,  9.54, 10.8, 9.74, 9.63,
                                           10.3, 9.58, 10.1, 9.29, 10.7, 10,  10.1, 10.5, 9.85};
  return kSeries;
}

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Fills one direction of a row with `bytes` of application data.
void fill(node::TraceRow& r, Direction d, std::uint64_t bytes, std::uint64_t payload) {
  const auto pkts = ceil_div(bytes, payload);
  // Rough PRB usage: one PRB per 250 bytes over the bin.
  const auto prbs = ceil_div(bytes, 250);
  if (d == Direction::dl) {
    r.dl_app_bytes = bytes;
    r.dl_pkts = pkts;
    r.prb_dl = prbs;
    r.rlc_delay_dl_ms = bytes > 0 ? 2.5 : 0.0;
  } else {
    r.ul_app_bytes = bytes;
    r.ul_pkts = pkts;
    r.prb_ul = prbs;
  }
}

// Bytes per bin for a rate, rounded to whole packets so that every packet
// carries exactly `payload` bytes.
std::uint64_t whole_packet_bytes(double mbps, std::uint64_t interval_ms, std::uint64_t payload) {
  const double bytes = mbps * 1e6 / 8.0 * static_cast<double>(interval_ms) / 1000.0;
  return static_cast<std::uint64_t>(std::llround(bytes / static_cast<double>(payload))) * payload;
}

std::vector<node::TraceRow> from_series(const TraceProfile& p, const std::vector<double>& mbps, Direction d) {
  std::vector<node::TraceRow> rows;
  const auto bins = std::min<std::uint64_t>(mbps.size(), p.duration_ms / 1000);
  for (std::uint64_t i = 0; i < bins; ++i) {
    node::TraceRow r;
    r.t_ms = i * 1000;
    r.interval_ms = 1000;
    r.ue_id = p.ue_id;
    fill(r, d, whole_packet_bytes(mbps[i], 1000, p.payload_bytes), p.payload_bytes);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

std::vector<node::TraceRow> generate_trace(const TraceProfile& p) {
  if (p.payload_bytes == 0) throw ValidationError("payload_bytes must be positive");
  if (p.interval_ms == 0) throw ValidationError("interval_ms must be positive");

  if (p.profile == "fig5-dl") return from_series(p, oai_dl_iperf_mbps(), Direction::dl);
  if (p.profile == "fig6-ul") return from_series(p, srsran_ul_iperf_mbps(), Direction::ul);

  if (!(p.rate_mbps > 0)) throw ValidationError("rate must be positive");
  std::vector<node::TraceRow> rows;
  if (p.profile == "constant") {
    const double bytes = p.rate_mbps * 1e6 / 8.0 * static_cast<double>(p.interval_ms) / 1000.0;
    for (std::uint64_t t = 0; t + p.interval_ms <= p.duration_ms; t += p.interval_ms) {
      node::TraceRow r;
      r.t_ms = t;
      r.interval_ms = p.interval_ms;
      r.ue_id = p.ue_id;
      fill(r, p.direction, static_cast<std::uint64_t>(std::llround(bytes)), p.payload_bytes);
      rows.push_back(std::move(r));
    }
    return rows;
  }
  if (p.profile == "random") {
    if (p.ues < 1) throw ValidationError("random profile needs at least one UE");
    std::mt19937_64 rng(p.seed);
    const double mean_bytes = p.rate_mbps * 1e6 / 8.0 * static_cast<double>(p.interval_ms) / 1000.0;
    std::uniform_real_distribution<double> load(0.0, 2.0);
    std::uniform_real_distribution<double> delay(0.5, 20.0);
    std::bernoulli_distribution idle(0.1);
    for (std::uint64_t t = 0; t + p.interval_ms <= p.duration_ms; t += p.interval_ms) {
      for (int u = 1; u <= p.ues; ++u) {
        node::TraceRow r;
        r.t_ms = t;
        r.interval_ms = p.interval_ms;
        r.ue_id = "ue" + std::to_string(u);
        const auto dl = idle(rng) ? 0 : static_cast<std::uint64_t>(mean_bytes * load(rng));
        const auto ul = idle(rng) ? 0 : static_cast<std::uint64_t>(mean_bytes * load(rng) / 10.0);
        fill(r, Direction::dl, dl, p.payload_bytes);
        fill(r, Direction::ul, ul, p.payload_bytes);
        if (dl > 0) r.rlc_delay_dl_ms = delay(rng);
        rows.push_back(std::move(r));
      }
    }
    return rows;
  }
  throw ValidationError("unknown trace profile '" + p.profile + "' (constant, fig5-dl, fig6-ul, random)");
}

}  // namespace e2dev::monitor
