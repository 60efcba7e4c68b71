#include "e2dev/node/trace.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>

#include "e2dev/common/csv.hpp"
#include "e2dev/common/error.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::node {

namespace {

void check_ue_id(const std::string& id, const std::string& where) {
  if (id.size() < kpm::kUeIdMin || id.size() > kpm::kUeIdMax) {
    throw ValidationError(where + ": ue_id must be 1..32 characters");
  }
}

}  // namespace

TrafficTrace::TrafficTrace(std::vector<TraceRow> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    check_ue_id(r.ue_id, "trace");
    by_ue_[r.ue_id].push_back(r);
  }
  for (auto& [ue, list] : by_ue_) {
    std::stable_sort(list.begin(), list.end(),
                     [](const TraceRow& a, const TraceRow& b) { return a.t_ms < b.t_ms; });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i - 1].t_ms + list[i - 1].interval_ms > list[i].t_ms) {
        throw ValidationError("trace: overlapping intervals for " + ue + " at t_ms=" +
                              std::to_string(list[i].t_ms));
      }
    }
  }
}

std::span<const TraceRow> TrafficTrace::slice(const std::string& ue_id, std::uint64_t from,
                                              std::uint64_t to) const {
  auto it = by_ue_.find(ue_id);
  if (it == by_ue_.end()) return {};
  const auto& list = it->second;
  auto by_t = [](const TraceRow& r, std::uint64_t t) { return r.t_ms < t; };
  auto lo = std::lower_bound(list.begin(), list.end(), from, by_t);
  auto hi = std::lower_bound(lo, list.end(), to, by_t);
  return {lo, hi};
}

std::vector<std::string> TrafficTrace::ue_ids() const {
  std::vector<std::string> out;
  for (const auto& [ue, _] : by_ue_) out.push_back(ue);
  return out;
}

std::uint64_t TrafficTrace::end_ms() const {
  std::uint64_t end = 0;
  for (const auto& r : rows_) end = std::max(end, r.t_ms + r.interval_ms);
  return end;
}

TrafficTrace read_trace_csv(std::istream& in) {
  std::vector<TraceRow> rows;
  for (const auto& line : csv::read(in, kTraceHeader, "trace")) {
    const auto where = "trace line " + std::to_string(line.number);
    const auto& f = line.fields;
    TraceRow r;
    r.t_ms = csv::parse_u64(f[0], where + " t_ms");
    r.interval_ms = csv::parse_u64(f[1], where + " interval_ms");
    r.ue_id = f[2];
    r.dl_app_bytes = csv::parse_u64(f[3], where + " dl_app_bytes");
    r.ul_app_bytes = csv::parse_u64(f[4], where + " ul_app_bytes");
    r.dl_pkts = csv::parse_u64(f[5], where + " dl_pkts");
    r.ul_pkts = csv::parse_u64(f[6], where + " ul_pkts");
    r.prb_dl = csv::parse_u64(f[7], where + " prb_dl");
    r.prb_ul = csv::parse_u64(f[8], where + " prb_ul");
    r.rlc_delay_dl_ms = csv::parse_double(f[9], where + " rlc_delay_dl_ms");
    if (r.rlc_delay_dl_ms < 0) throw ValidationError(where + ": negative rlc_delay_dl_ms");
    check_ue_id(r.ue_id, where);
    rows.push_back(std::move(r));
  }
  return TrafficTrace(std::move(rows));
}

TrafficTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace file: " + path);
  return read_trace_csv(in);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const auto& r : rows) {
    out << r.t_ms << ',' << r.interval_ms << ',' << r.ue_id << ',' << r.dl_app_bytes << ','
        << r.ul_app_bytes << ',' << r.dl_pkts << ',' << r.ul_pkts << ',' << r.prb_dl << ',' << r.prb_ul
        << ',' << r.rlc_delay_dl_ms << '\n';
  }
}

std::vector<UeEvent> read_ue_events_csv(std::istream& in) {
  std::vector<UeEvent> out;
  for (const auto& line : csv::read(in, "t_ms,ue_id,kind", "ue events")) {
    const auto where = "ue events line " + std::to_string(line.number);
    UeEvent e;
    e.t_ms = csv::parse_u64(line.fields[0], where + " t_ms");
    e.ue_id = line.fields[1];
    check_ue_id(e.ue_id, where);
    if (line.fields[2] == "attach") {
      e.kind = UeEventKind::attach;
    } else if (line.fields[2] == "detach") {
      e.kind = UeEventKind::detach;
    } else {
      throw ValidationError(where + ": kind must be attach or detach");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<UeEvent> read_ue_events_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ue events file: " + path);
  return read_ue_events_csv(in);
}

UePresence::UePresence(const TrafficTrace& trace, const std::vector<UeEvent>& events) {
  std::map<std::string, std::vector<UeEvent>> per_ue;
  for (const auto& e : events) per_ue[e.ue_id].push_back(e);
  for (const auto& ue : trace.ue_ids()) per_ue.try_emplace(ue);

  for (auto& [ue, list] : per_ue) {
    std::stable_sort(list.begin(), list.end(),
                     [](const UeEvent& a, const UeEvent& b) { return a.t_ms < b.t_ms; });
    auto& iv = intervals_[ue];
    bool attached = list.empty() || list.front().kind == UeEventKind::detach;
    std::uint64_t since = 0;
    for (const auto& e : list) {
      if ((e.kind == UeEventKind::attach) == attached) {
        throw ValidationError("ue events: " + ue + " " + (attached ? "attached" : "detached") +
                              " twice (t_ms=" + std::to_string(e.t_ms) + ")");
      }
      if (attached) {
        if (e.t_ms > since) iv.push_back({since, e.t_ms});
      } else {
        since = e.t_ms;
      }
      attached = !attached;
    }
    if (attached) iv.push_back({since, kForever});
  }
}

bool UePresence::present(const std::string& ue_id, std::uint64_t from, std::uint64_t to) const {
  auto it = intervals_.find(ue_id);
  if (it == intervals_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Interval& i) { return i.attach < to && i.detach > from; });
}

std::vector<std::string> UePresence::present_in(std::uint64_t from, std::uint64_t to) const {
  std::vector<std::string> out;
  for (const auto& [ue, _] : intervals_) {
    if (present(ue, from, to)) out.push_back(ue);
  }
  return out;
}

}  // namespace e2dev::node
