#include "e2dev/monitor/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>

#include "e2dev/monitor/kpm_monitor.hpp"

namespace e2dev::monitor {

namespace {

struct Throughput {
  std::size_t index;
  bool is_rate;  // kbps metric, else a byte volume
};

Throughput throughput_metric(const ScenarioConfig& c) {
  const bool dl = c.direction == Direction::dl;
  const std::string thp = dl ? kpm::metric::kUeThpDl : kpm::metric::kUeThpUl;
  const std::string vol = dl ? kpm::metric::kPdcpSduVolumeDl : kpm::metric::kPdcpSduVolumeUl;
  auto it = std::find(c.metrics.begin(), c.metrics.end(), thp);
  if (it != c.metrics.end()) return {static_cast<std::size_t>(it - c.metrics.begin()), true};
  it = std::find(c.metrics.begin(), c.metrics.end(), vol);
  if (it == c.metrics.end()) throw ConfigError("metrics carry no throughput for the configured direction");
  return {static_cast<std::size_t>(it - c.metrics.begin()), false};
}

std::optional<double> as_number(const kpm::MeasValue& v) {
  if (v.is_int()) return static_cast<double>(v.as_int());
  if (v.is_real()) return v.as_real();
  return std::nullopt;
}

std::vector<ThroughputRow> kpm_rows(const ScenarioConfig& c, const std::vector<xapp::DecodedIndication>& ds) {
  const auto metric = throughput_metric(c);
  const double g = c.granularity_ms;
  std::vector<ThroughputRow> rows;
  for (const auto& d : ds) {
    if (d.status != xapp::DecodeStatus::decoded) continue;
    const auto& header = std::get<kpm::IndicationHeader>(d.header);
    const auto& msg = std::get<kpm::IndicationMessage>(d.message);
    const auto* per_ue = std::get_if<kpm::PerUeReport>(&msg);
    if (!per_ue) continue;
    for (const auto& ue : per_ue->ue_reports) {
      for (std::size_t k = 0; k < ue.records.size(); ++k) {
        const auto v = as_number(ue.records[k].values.at(metric.index));
        if (!v) continue;
        const double mbps = metric.is_rate ? *v / 1000.0 : *v * 8.0 / g / 1000.0;
        rows.push_back({header.collection_start_time_ms + k * c.granularity_ms, ue.ue_id, mbps});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ThroughputRow& a, const ThroughputRow& b) {
    return std::tie(a.t_ms, a.ue_id) < std::tie(b.t_ms, b.ue_id);
  });
  return rows;
}

std::vector<ThroughputRow> app_rows(const ScenarioConfig& c, const node::TrafficTrace& trace,
                                    const std::vector<ThroughputRow>& kpm) {
  std::vector<ThroughputRow> rows;
  for (const auto& k : kpm) {
    std::uint64_t bytes = 0;
    for (const auto& r : trace.slice(k.ue_id, k.t_ms, k.t_ms + c.granularity_ms)) {
      bytes += c.direction == Direction::dl ? r.dl_app_bytes : r.ul_app_bytes;
    }
    rows.push_back({k.t_ms, k.ue_id, static_cast<double>(bytes) * 8.0 / c.granularity_ms / 1000.0});
  }
  return rows;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const ScenarioHooks& hooks) {
  validate(config);
  node::TrafficTrace trace;
  std::vector<node::UeEvent> events;
  try {
    trace = node::read_trace_file(config.trace);
    if (!config.ue_events.empty()) events = node::read_ue_events_file(config.ue_events);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }

  ScenarioResult result;
  const std::uint64_t period = config.reporting_period_ms;
  result.duration_ms = hooks.duration_ms.value_or((trace.end_ms() + period - 1) / period * period);

  auto tracker = std::make_shared<net::WorkTracker>();
  auto logger = hooks.log_sink ? std::make_shared<Logger>(hooks.log_sink) : std::make_shared<Logger>();
  auto registry = std::make_shared<sm::Registry>();
  sm::register_default_codecs(*registry);

  ric::RicConfig rc;
  rc.listen = config.ric_listen;
  rc.seed = config.seed;
  rc.tracker = tracker;
  rc.logger = logger;
  ric::Ric ric(rc, registry);
  try {
    ric.start();
  } catch (const Error& e) {
    throw ScenarioError(std::string("RIC failed to start: ") + e.what());
  }

  node::NodeConfig nc;
  nc.id = e2ap::GlobalE2NodeId{config.node_plmn, config.node_gnb_id};
  nc.ric_endpoint = ric.endpoint();
  nc.trace = trace;
  nc.ue_events = events;
  nc.model.header_overhead_bytes = config.header_overhead_bytes;
  nc.report_phase_offset_ms = config.report_phase_offset_ms;
  nc.tracker = tracker;
  nc.logger = logger;
  nc.fault_injector = hooks.fault_injector;
  std::unique_ptr<node::NodeSim> node;
  try {
    node = std::make_unique<node::NodeSim>(std::move(nc));
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }

  xapp::XappOptions xo;
  xo.ric_endpoint = ric.endpoint();
  xo.xapp_id = "kpm-monitor";
  xo.registry = registry;
  xo.tracker = tracker;
  xo.logger = logger;
  KpmMonitorXapp monitor(xo, MonitorSettings{config.metrics, config.reporting_period_ms, config.granularity_ms});

  std::thread xapp_thread;
  xapp::RunResult run_result;
  auto shutdown = [&] {
    monitor.stop();
    if (xapp_thread.joinable()) xapp_thread.join();
    monitor.close();
    node->stop();
    ric.stop();
  };

  try {
    node->start();
    monitor.connect();
    xapp_thread = std::thread([&] { run_result = monitor.run(); });

    auto sub = monitor.subscribed();
    if (sub.wait_for(hooks.idle_timeout) != std::future_status::ready) throw ScenarioError("xApp never subscribed");
    const auto rid = sub.get();
    auto settle = [&] {
      if (!tracker->wait_idle(hooks.idle_timeout)) throw ScenarioError("scenario stalled waiting for quiescence");
    };
    settle();

    bool deleted = false;
    for (std::uint64_t t = period; t <= result.duration_ms; t += period) {
      node->advance_to(t);
      settle();
      if (config.delete_at_ms && !deleted && t >= *config.delete_at_ms) {
        monitor.context().unsubscribe(rid);
        deleted = true;
        settle();
      }
    }
  } catch (const ScenarioError&) {
    shutdown();
    throw;
  } catch (const Error& e) {
    shutdown();
    throw ScenarioError(e.what());
  }

  result.ric_stats = ric.stats();
  result.xapp_stats = monitor.context().stats();
  shutdown();
  if (run_result.logic_failed) throw ScenarioError("xApp logic failed: " + run_result.error);

  result.node = node->inventory_name();
  result.indication_frames = node->indication_frames();
  result.sent = node->sent_indications();
  result.unknown_metric_warnings = node->unknown_metric_warnings();
  result.deliveries = monitor.deliveries();
  result.inventory_after_run = ric.inventory_snapshot();
  result.kpm = kpm_rows(config, result.deliveries);
  result.app = app_rows(config, trace, result.kpm);
  result.report = compare(result.app, result.kpm);
  result.log_lines = logger->lines();
  return result;
}

void write_artifacts(const ScenarioResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw ScenarioError(std::string("cannot write ") + (fs::path(out_dir) / name).string());
    return f;
  };
  {
    auto f = open("kpm.csv");
    write_throughput_csv(f, r.kpm);
  }
  {
    auto f = open("app.csv");
    write_throughput_csv(f, r.app);
  }
  {
    auto f = open("report.txt");
    f << format_report(r.report);
  }
  {
    auto f = open("run.log");
    for (const auto& line : r.log_lines) f << line << '\n';
  }
  {
    auto f = open("indications.hex");
    for (const auto& frame : r.indication_frames) f << to_hex(frame) << '\n';
  }
}

}  // namespace e2dev::monitor
