#pragma once

#include <iosfwd>
#include <string>

#include "e2dev/monitor/trace_gen.hpp"

namespace e2dev::monitor {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err, bool verbose = false);
int cmd_decode(const std::string& type, const std::string& hex, bool verify, std::ostream& out, std::ostream& err);
// report_path may be empty (stdout only).
int cmd_compare(const std::string& app_csv, const std::string& kpm_csv, const std::string& report_path,
                std::ostream& out, std::ostream& err);
int cmd_gen_trace(const TraceProfile& profile, const std::string& out_path, std::ostream& out, std::ostream& err);

}  // namespace e2dev::monitor
