#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace e2dev::node {

// One interval of ground-truth traffic for one UE.
struct TraceRow {
  std::uint64_t t_ms = 0;
  std::uint64_t interval_ms = 0;
  std::string ue_id;
  std::uint64_t dl_app_bytes = 0;
  std::uint64_t ul_app_bytes = 0;
  std::uint64_t dl_pkts = 0;
  std::uint64_t ul_pkts = 0;
  std::uint64_t prb_dl = 0;
  std::uint64_t prb_ul = 0;
  double rlc_delay_dl_ms = 0.0;
  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

inline constexpr const char* kTraceHeader =
    "t_ms,interval_ms,ue_id,dl_app_bytes,ul_app_bytes,dl_pkts,ul_pkts,prb_dl,prb_ul,rlc_delay_dl_ms";

// Rows keyed by UE, each list sorted by t_ms. Construction validates that a
// UE's intervals do not overlap.
class TrafficTrace {
 public:
  TrafficTrace() = default;
  explicit TrafficTrace(std::vector<TraceRow> rows);

  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }

  // Rows of `ue_id` whose t_ms lies in [from, to).
  std::span<const TraceRow> slice(const std::string& ue_id, std::uint64_t from, std::uint64_t to) const;
  std::vector<std::string> ue_ids() const;
  // Largest t_ms + interval_ms over all rows (0 for an empty trace).
  std::uint64_t end_ms() const;

 private:
  std::vector<TraceRow> rows_;  // input order
  std::map<std::string, std::vector<TraceRow>> by_ue_;
};

TrafficTrace read_trace_csv(std::istream& in);
TrafficTrace read_trace_file(const std::string& path);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);

enum class UeEventKind { attach, detach };

struct UeEvent {
  std::uint64_t t_ms = 0;
  std::string ue_id;
  UeEventKind kind = UeEventKind::attach;
  friend bool operator==(const UeEvent&, const UeEvent&) = default;
};

std::vector<UeEvent> read_ue_events_csv(std::istream& in);
std::vector<UeEvent> read_ue_events_file(const std::string& path);

/// Attachment intervals per UE. A UE seen in the trace with no attach event
/// is attached from t=0; a UE whose first event is a detach was attached
/// from t=0 as well. After that, events must alternate.
class UePresence {
 public:
  static constexpr std::uint64_t kForever = std::numeric_limits<std::uint64_t>::max();

  UePresence() = default;
  UePresence(const TrafficTrace& trace, const std::vector<UeEvent>& events);

  // True if the UE is attached during any part of [from, to).
  bool present(const std::string& ue_id, std::uint64_t from, std::uint64_t to) const;
  // UEs attached during any part of [from, to), sorted by id.
  std::vector<std::string> present_in(std::uint64_t from, std::uint64_t to) const;

 private:
  struct Interval {
    std::uint64_t attach;
    std::uint64_t detach;
  };
  std::map<std::string, std::vector<Interval>> intervals_;
};

}  // namespace e2dev::node
