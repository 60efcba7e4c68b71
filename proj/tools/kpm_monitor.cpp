// kpm-monitor: run desk-scale KPM scenarios and inspect their messages.

#include <iostream>

#include "CLI11.hpp"
#include "e2dev/monitor/commands.hpp"
#include "e2dev/monitor/decode.hpp"

using namespace e2dev::monitor;

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale E2/KPM scenario runner and message inspector"};
  app.require_subcommand(1);

  std::string config_path;
  bool verbose = false;
  auto* run = app.add_subcommand("run", "Run RIC, simulated gNB and the KPM monitor xApp");
  run->add_option("config", config_path, "Scenario config (key=value)")->required();
  run->add_flag("-v,--verbose", verbose, "Echo the structured log to stderr");

  std::string type, hex;
  bool verify = false;
  auto* decode = app.add_subcommand("decode", "Decode a hex payload");
  decode->add_option("--type", type, "Payload type")->required()->check(CLI::IsMember(decode_types()));
  decode->add_option("hex", hex, "Payload as hex")->required();
  decode->add_flag("--verify", verify, "Re-encode and require identical bytes");

  std::string app_csv, kpm_csv, report_path;
  auto* cmp = app.add_subcommand("compare", "Compare app-level and KPM throughput series");
  cmp->add_option("app_csv", app_csv, "Ground truth, t_ms,ue_id,mbps")->required();
  cmp->add_option("kpm_csv", kpm_csv, "xApp observed, t_ms,ue_id,mbps")->required();
  cmp->add_option("--report", report_path, "Also write the report here");

  TraceProfile profile;
  std::string out_path = "-";
  std::string direction = "dl";
  auto* gen = app.add_subcommand("gen-trace", "Write a synthetic traffic trace");
  gen->add_option("--profile", profile.profile, "constant | fig5-dl | fig6-ul | random")->capture_default_str();
  gen->add_option("--duration-ms", profile.duration_ms)->capture_default_str();
  gen->add_option("--rate-mbps", profile.rate_mbps)->capture_default_str();
  gen->add_option("--payload-bytes", profile.payload_bytes)->capture_default_str();
  gen->add_option("--interval-ms", profile.interval_ms)->capture_default_str();
  gen->add_option("--direction", direction)->check(CLI::IsMember({"dl", "ul"}))->capture_default_str();
  gen->add_option("--ue", profile.ue_id)->capture_default_str();
  gen->add_option("--ues", profile.ues, "UE count for the random profile")->capture_default_str();
  gen->add_option("--seed", profile.seed)->capture_default_str();
  gen->add_option("-o,--out", out_path, "Output file, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(config_path, std::cout, std::cerr, verbose);
  if (*decode) return cmd_decode(type, hex, verify, std::cout, std::cerr);
  if (*cmp) return cmd_compare(app_csv, kpm_csv, report_path, std::cout, std::cerr);
  profile.direction = direction == "ul" ? Direction::ul : Direction::dl;
  return cmd_gen_trace(profile, out_path, std::cout, std::cerr);
}
