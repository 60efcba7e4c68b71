#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "e2dev/monitor/compare.hpp"
#include "e2dev/monitor/config.hpp"
#include "e2dev/node/node_sim.hpp"
#include "e2dev/ric/ric.hpp"
#include "e2dev/xapp/context.hpp"

namespace e2dev::monitor {

class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct ScenarioHooks {
  std::function<void(std::uint32_t sn, Octets& message)> fault_injector;
  // Defaults to the trace end rounded up to a whole reporting period.
  std::optional<std::uint64_t> duration_ms;
  std::chrono::milliseconds idle_timeout{5000};
  // Mirror log lines somewhere as they happen (e.g. stderr).
  std::function<void(const std::string&)> log_sink;
};

struct ScenarioResult {
  std::uint64_t duration_ms = 0;
  std::string node;
  std::vector<ThroughputRow> kpm;  // what the xApp saw
  std::vector<ThroughputRow> app;  // trace ground truth for the same bins
  ComparisonReport report;
  std::vector<Octets> indication_frames;
  std::vector<node::SentIndication> sent;
  std::vector<xapp::DecodedIndication> deliveries;
  std::vector<ric::InventoryRecord> inventory_after_run;
  std::vector<std::string> log_lines;
  ric::RicStats ric_stats;
  xapp::XappStats xapp_stats;
  std::uint64_t unknown_metric_warnings = 0;
};

// Runs RIC, node and the reference monitor xApp in-process on a virtual
// clock. Throws ConfigError for unreadable inputs and ScenarioError when the
// run itself fails.
ScenarioResult run_scenario(const ScenarioConfig& config, const ScenarioHooks& hooks = {});

// kpm.csv, app.csv, report.txt, run.log and indications.hex under out_dir.
void write_artifacts(const ScenarioResult& result, const std::string& out_dir);

}  // namespace e2dev::monitor
