#include "e2dev/monitor/commands.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "e2dev/monitor/compare.hpp"
#include "e2dev/monitor/decode.hpp"
#include "e2dev/monitor/scenario.hpp"

namespace e2dev::monitor {

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err, bool verbose) {
  ScenarioConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  ScenarioHooks hooks;
  if (verbose) hooks.log_sink = [&err](const std::string& line) { err << line << '\n'; };
  try {
    const auto result = run_scenario(config, hooks);
    write_artifacts(result, config.out_dir);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    out << "node: " << result.node << '\n'
        << "indications: " << result.indication_frames.size() << " sent, " << result.deliveries.size()
        << " delivered\n"
        << "bins: " << result.kpm.size() << '\n'
        << "mean_rel_offset: " << result.report.mean_rel_offset << '\n'
        << "wall_ms: " << ms.count() << '\n'
        << "artifacts: " << config.out_dir << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "scenario failed: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_decode(const std::string& type, const std::string& hex, bool verify, std::ostream& out, std::ostream& err) {
  try {
    out << decode_pretty(type, hex, verify);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_compare(const std::string& app_csv, const std::string& kpm_csv, const std::string& report_path,
                std::ostream& out, std::ostream& err) {
  try {
    const auto report = compare(read_throughput_file(app_csv), read_throughput_file(kpm_csv));
    const auto text = format_report(report);
    out << text;
    if (!report_path.empty()) {
      std::ofstream f(report_path);
      if (!f) throw ValidationError("cannot write " + report_path);
      f << text;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_gen_trace(const TraceProfile& profile, const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = generate_trace(profile);
    if (out_path.empty() || out_path == "-") {
      node::write_trace_csv(out, rows);
    } else {
      std::ofstream f(out_path);
      if (!f) throw ValidationError("cannot write " + out_path);
      node::write_trace_csv(f, rows);
      out << "wrote " << rows.size() << " rows to " << out_path << '\n';
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace e2dev::monitor
