#include "e2dev/monitor/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "e2dev/common/csv.hpp"

namespace e2dev::monitor {

std::vector<ThroughputRow> read_throughput_csv(std::istream& in) {
  std::vector<ThroughputRow> rows;
  for (const auto& line : csv::read(in, kThroughputHeader, "throughput csv")) {
    const auto where = "line " + std::to_string(line.number);
    rows.push_back({csv::parse_u64(line.fields[0], where + " t_ms"), line.fields[1],
                    csv::parse_double(line.fields[2], where + " mbps")});
  }
  return rows;
}

std::vector<ThroughputRow> read_throughput_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return read_throughput_csv(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_throughput_csv(std::ostream& out, const std::vector<ThroughputRow>& rows) {
  out << kThroughputHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f", r.mbps);
    out << r.t_ms << ',' << r.ue_id << ',' << buf << '\n';
  }
}

ComparisonReport compare(const std::vector<ThroughputRow>& app, const std::vector<ThroughputRow>& kpm) {
  using Key = std::pair<std::uint64_t, std::string>;
  std::map<Key, double> kpm_by_key;
  for (const auto& r : kpm) {
    if (!kpm_by_key.emplace(Key{r.t_ms, r.ue_id}, r.mbps).second) {
      throw MisalignedBins("duplicate kpm bin t_ms=" + std::to_string(r.t_ms) + " ue=" + r.ue_id);
    }
  }
  if (app.size() != kpm.size()) {
    throw MisalignedBins("bin count differs: app " + std::to_string(app.size()) + ", kpm " +
                         std::to_string(kpm.size()));
  }

  ComparisonReport rep;
  double sum = 0;
  for (const auto& a : app) {
    auto it = kpm_by_key.find(Key{a.t_ms, a.ue_id});
    if (it == kpm_by_key.end()) {
      throw MisalignedBins("no kpm bin for t_ms=" + std::to_string(a.t_ms) + " ue=" + a.ue_id);
    }
    ComparisonRow row{a.t_ms, a.ue_id, a.mbps, it->second, std::nullopt};
    kpm_by_key.erase(it);
    if (a.mbps > 0) {
      row.rel_offset = row.kpm_mbps / row.app_mbps - 1.0;
      sum += *row.rel_offset;
      ++rep.bins_in_mean;
    }
    rep.max_abs_offset = std::max(rep.max_abs_offset, std::fabs(row.kpm_mbps - row.app_mbps));
    rep.rows.push_back(std::move(row));
  }
  if (!kpm_by_key.empty()) throw MisalignedBins("duplicate app bin");
  std::sort(rep.rows.begin(), rep.rows.end(), [](const ComparisonRow& x, const ComparisonRow& y) {
    return std::tie(x.t_ms, x.ue_id) < std::tie(y.t_ms, y.ue_id);
  });
  if (rep.bins_in_mean > 0) rep.mean_rel_offset = sum / static_cast<double>(rep.bins_in_mean);
  return rep;
}

std::string format_report(const ComparisonReport& r) {
  std::ostringstream out;
  char buf[160];
  out << "bins: " << r.rows.size() << '\n';
  out << "bins_in_mean: " << r.bins_in_mean << '\n';
  std::snprintf(buf, sizeof buf, "mean_rel_offset: %.12f (%+.4f%%)\n", r.mean_rel_offset,
                r.mean_rel_offset * 100.0);
  out << buf;
  std::snprintf(buf, sizeof buf, "max_abs_offset_mbps: %.6f\n", r.max_abs_offset);
  out << buf;
  out << "t_ms,ue_id,app_mbps,kpm_mbps,rel_offset\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%llu,%s,%.6f,%.6f,", static_cast<unsigned long long>(row.t_ms),
                  row.ue_id.c_str(), row.app_mbps, row.kpm_mbps);
    out << buf;
    if (row.rel_offset) {
      std::snprintf(buf, sizeof buf, "%.9f", *row.rel_offset);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace e2dev::monitor
