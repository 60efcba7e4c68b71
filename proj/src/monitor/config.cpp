#include "e2dev/monitor/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "e2dev/common/csv.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::monitor {

namespace fs = std::filesystem;

const char* to_string(Direction d) { return d == Direction::dl ? "dl" : "ul"; }

const std::vector<std::string>& default_metrics() {
  namespace m = kpm::metric;
  static const std::vector<std::string> kMetrics{m::kPdcpSduVolumeDl, m::kPdcpSduVolumeUl, m::kUeThpDl,
                                                 m::kUeThpUl,         m::kPrbTotDl,        m::kPrbTotUl};
  return kMetrics;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t number(const std::string& key, const std::string& v) {
  try {
    return csv::parse_u64(v, key);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

ScenarioConfig parse_config(std::istream& in, const std::string& base_dir) {
  ScenarioConfig c;
  std::set<std::string> seen;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(n) + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");

    if (key == "ric_listen") {
      c.ric_listen = value;
    } else if (key == "node_plmn") {
      try {
        c.node_plmn = e2ap::Plmn::from_hex(value);
      } catch (const Error& e) {
        throw ConfigError("config: node_plmn: " + std::string(e.what()));
      }
    } else if (key == "node_gnb_id") {
      try {
        std::size_t used = 0;
        const auto v = std::stoull(value, &used, 0);
        if (used != value.size() || v > 0xFFFFFFFFULL) throw std::out_of_range("gnb id");
        c.node_gnb_id = static_cast<std::uint32_t>(v);
      } catch (const std::logic_error&) {
        throw ConfigError("config: node_gnb_id must be a 32-bit integer (decimal or 0x hex)");
      }
    } else if (key == "trace") {
      c.trace = resolve(base_dir, value);
    } else if (key == "ue_events") {
      c.ue_events = resolve(base_dir, value);
    } else if (key == "reporting_period_ms") {
      c.reporting_period_ms = static_cast<std::uint32_t>(std::min<std::uint64_t>(number(key, value), 1ULL << 32));
    } else if (key == "granularity_ms") {
      c.granularity_ms = static_cast<std::uint32_t>(std::min<std::uint64_t>(number(key, value), 1ULL << 32));
    } else if (key == "metrics") {
      c.metrics.clear();
      for (const auto& m : csv::split(value)) {
        if (!m.empty()) c.metrics.push_back(m);
      }
    } else if (key == "header_overhead_bytes") {
      c.header_overhead_bytes = number(key, value);
    } else if (key == "out_dir") {
      c.out_dir = resolve(base_dir, value);
    } else if (key == "seed") {
      c.seed = number(key, value);
    } else if (key == "direction") {
      if (value == "dl") c.direction = Direction::dl;
      else if (value == "ul") c.direction = Direction::ul;
      else throw ConfigError("config: direction must be dl or ul");
    } else if (key == "delete_at_ms") {
      c.delete_at_ms = number(key, value);
    } else if (key == "report_phase_offset_ms") {
      c.report_phase_offset_ms = number(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, fs::path(path).parent_path().string());
}

void validate(const ScenarioConfig& c) {
  if (c.trace.empty()) throw ConfigError("config: trace is required");
  if (!fs::is_regular_file(c.trace)) throw ConfigError("trace file not found: " + c.trace);
  if (!c.ue_events.empty() && !fs::is_regular_file(c.ue_events)) {
    throw ConfigError("ue_events file not found: " + c.ue_events);
  }
  if (c.out_dir.empty()) throw ConfigError("config: out_dir is required");
  if (c.reporting_period_ms < kpm::kPeriodMin || c.reporting_period_ms > kpm::kPeriodMax) {
    throw ConfigError("config: reporting_period_ms must be in [1, 65536]");
  }
  if (c.granularity_ms == 0 || c.reporting_period_ms % c.granularity_ms != 0) {
    throw ConfigError("config: granularity_ms must divide reporting_period_ms");
  }
  if (c.metrics.empty() || c.metrics.size() > kpm::kActionMetricsMax) {
    throw ConfigError("config: metrics must list 1..64 names");
  }
  const bool dl = c.direction == Direction::dl;
  const std::string thp = dl ? kpm::metric::kUeThpDl : kpm::metric::kUeThpUl;
  const std::string vol = dl ? kpm::metric::kPdcpSduVolumeDl : kpm::metric::kPdcpSduVolumeUl;
  if (std::find(c.metrics.begin(), c.metrics.end(), thp) == c.metrics.end() &&
      std::find(c.metrics.begin(), c.metrics.end(), vol) == c.metrics.end()) {
    throw ConfigError("config: metrics must include " + thp + " or " + vol + " for direction " +
                      to_string(c.direction));
  }
}

}  // namespace e2dev::monitor
