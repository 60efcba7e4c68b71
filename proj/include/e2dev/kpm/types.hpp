#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace e2dev::kpm {

// Schema bounds. Every list and string is bounded so only constrained
// length fields appear on the wire.
inline constexpr std::size_t kNameMin = 1;
inline constexpr std::size_t kNameMax = 150;
inline constexpr std::uint64_t kStyleMax = 4;
inline constexpr std::size_t kStyleMetricsMax = 64;
inline constexpr std::size_t kStylesMin = 1;
inline constexpr std::size_t kStylesMax = 5;
inline constexpr std::uint64_t kPeriodMin = 1;
inline constexpr std::uint64_t kPeriodMax = 65536;
inline constexpr std::size_t kActionMetricsMin = 1;
inline constexpr std::size_t kActionMetricsMax = 64;
inline constexpr std::size_t kRecordValuesMax = 64;
inline constexpr std::size_t kRecordsMin = 1;
inline constexpr std::size_t kRecordsMax = 1024;
inline constexpr std::size_t kUeReportsMax = 64;
inline constexpr std::size_t kUeIdMin = 1;
inline constexpr std::size_t kUeIdMax = 32;

// The seven measurements exposed by the reference node under style 3.
namespace metric {
inline constexpr const char* kPdcpSduVolumeDl = "DRB.PdcpSduVolumeDL";
inline constexpr const char* kPdcpSduVolumeUl = "DRB.PdcpSduVolumeUL";
inline constexpr const char* kRlcSduDelayDl = "DRB.RlcSduDelayDl";
inline constexpr const char* kUeThpDl = "DRB.UEThpDl";
inline constexpr const char* kUeThpUl = "DRB.UEThpUl";
inline constexpr const char* kPrbTotDl = "RRU.PrbTotDl";
inline constexpr const char* kPrbTotUl = "RRU.PrbTotUl";
}  // namespace metric

const std::vector<std::string>& reference_metrics();

// Style that carries per-UE reports on the reference node.
inline constexpr std::uint32_t kPerUeStyle = 3;

struct ReportStyle {
  std::uint32_t style_id = 0;
  std::vector<std::string> metrics;
  friend bool operator==(const ReportStyle&, const ReportStyle&) = default;
};

struct RanFunctionDefinition {
  std::string function_name;
  std::vector<ReportStyle> styles;
  friend bool operator==(const RanFunctionDefinition&, const RanFunctionDefinition&) = default;
};

struct EventTriggerDefinition {
  std::uint32_t reporting_period_ms = 1000;
  friend bool operator==(const EventTriggerDefinition&, const EventTriggerDefinition&) = default;
};

struct ActionDefinition {
  std::uint32_t style_id = kPerUeStyle;
  std::vector<std::string> metrics;
  std::uint32_t granularity_period_ms = 1000;
  friend bool operator==(const ActionDefinition&, const ActionDefinition&) = default;
};

struct NoValue {
  friend bool operator==(NoValue, NoValue) = default;
};

// Reals compare by bit pattern so that decode(encode(v)) == v holds for every
// binary64 value, NaN payloads included.
class MeasValue {
 public:
  using Storage = std::variant<std::uint64_t, double, NoValue>;

  MeasValue() : v_(NoValue{}) {}
  static MeasValue integer(std::uint64_t v) { return MeasValue(Storage(std::in_place_index<0>, v)); }
  static MeasValue real(double v) { return MeasValue(Storage(std::in_place_index<1>, v)); }
  static MeasValue none() { return MeasValue(); }

  bool is_int() const { return v_.index() == 0; }
  bool is_real() const { return v_.index() == 1; }
  bool is_none() const { return v_.index() == 2; }
  std::uint64_t as_int() const { return std::get<0>(v_); }
  double as_real() const { return std::get<1>(v_); }
  std::size_t index() const { return v_.index(); }

  friend bool operator==(const MeasValue& a, const MeasValue& b);

 private:
  explicit MeasValue(Storage v) : v_(v) {}
  Storage v_;
};

struct MeasRecord {
  std::vector<MeasValue> values;
  friend bool operator==(const MeasRecord&, const MeasRecord&) = default;
};

struct IndicationHeader {
  std::uint64_t collection_start_time_ms = 0;
  std::string sender;
  friend bool operator==(const IndicationHeader&, const IndicationHeader&) = default;
};

struct NodeLevelReport {
  std::vector<MeasRecord> records;
  friend bool operator==(const NodeLevelReport&, const NodeLevelReport&) = default;
};

struct UeReport {
  std::string ue_id;
  std::vector<MeasRecord> records;
  friend bool operator==(const UeReport&, const UeReport&) = default;
};

struct PerUeReport {
  std::vector<UeReport> ue_reports;
  friend bool operator==(const PerUeReport&, const PerUeReport&) = default;
};

using IndicationMessage = std::variant<NodeLevelReport, PerUeReport>;

// style_id -> metric names, in declaration order.
using FunctionSummary = std::map<std::uint32_t, std::vector<std::string>>;

FunctionSummary function_definition_summary(const RanFunctionDefinition& d);

// Renders a summary like {0: [], 3: ['DRB.UEThpDl', 'DRB.UEThpUl']}.
std::string format_summary(const FunctionSummary& s);

// The KPM function advertised by the reference node: styles 0..4, style 3
// carrying the seven reference metrics.
RanFunctionDefinition reference_function_definition();

}  // namespace e2dev::kpm
