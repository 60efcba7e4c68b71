#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/messages.hpp"

namespace e2dev::monitor {

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

enum class Direction { dl, ul };
const char* to_string(Direction d);

// Metrics the reference monitor subscribes to when the config names none.
const std::vector<std::string>& default_metrics();

struct ScenarioConfig {
  std::string ric_listen = "inproc://ric";
  e2ap::Plmn node_plmn = e2ap::Plmn::from_hex("00F110");
  std::uint32_t node_gnb_id = 0x0E05;
  std::string trace;
  std::string ue_events;  // optional
  std::uint32_t reporting_period_ms = 1000;
  std::uint32_t granularity_ms = 1000;
  std::vector<std::string> metrics = default_metrics();
  std::uint64_t header_overhead_bytes = 43;
  std::string out_dir;
  std::uint64_t seed = 0;
  // Optional extras.
  Direction direction = Direction::dl;
  std::optional<std::uint64_t> delete_at_ms;
  std::uint64_t report_phase_offset_ms = 0;
};

// key=value lines, '#' starts a comment. Relative paths resolve against
// base_dir. Throws ConfigError on unknown keys, bad values or missing files.
ScenarioConfig parse_config(std::istream& in, const std::string& base_dir = ".");
ScenarioConfig load_config(const std::string& path);

// Checks value ranges and that referenced files exist.
void validate(const ScenarioConfig& c);

}  // namespace e2dev::monitor
