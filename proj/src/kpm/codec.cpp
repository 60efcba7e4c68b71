#include "e2dev/kpm/codec.hpp"

#include <set>

#include "e2dev/common/error.hpp"
#include "e2dev/per/bit_buffer.hpp"

namespace e2dev::kpm {

using per::BitBuffer;

namespace {

// MeasValue and IndicationMessage choice indices.
constexpr std::uint64_t kValueInt = 0;
constexpr std::uint64_t kValueReal = 1;
constexpr std::uint64_t kValueNone = 2;
constexpr std::uint64_t kMsgNodeLevel = 0;
constexpr std::uint64_t kMsgPerUe = 1;

template <class E>
void require_unique(const std::vector<std::string>& names, std::string_view what) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw E(std::string(what) + ": duplicate '" + n + "'");
  }
}

void put_names(BitBuffer& b, const std::vector<std::string>& names, std::size_t min_n,
               std::size_t max_n, std::string_view field) {
  b.append_constrained_uint(names.size(), min_n, max_n, field);
  for (const auto& n : names) b.append_chars(n, kNameMin, kNameMax, "measurement name");
}

std::vector<std::string> get_names(BitBuffer& b, std::size_t min_n, std::size_t max_n,
                                   std::string_view field) {
  const auto n = b.read_constrained_uint(min_n, max_n, field);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(b.read_chars(kNameMin, kNameMax, "measurement name"));
  return out;
}

void put_record(BitBuffer& b, const MeasRecord& r) {
  b.append_constrained_uint(r.values.size(), 0, kRecordValuesMax, "record values");
  for (const auto& v : r.values) {
    b.append_constrained_uint(v.index(), 0, 2, "meas value choice");
    if (v.is_int()) b.append_fixed_uint64(v.as_int());
    else if (v.is_real()) b.append_real(v.as_real());
  }
}

MeasRecord get_record(BitBuffer& b) {
  MeasRecord r;
  const auto n = b.read_constrained_uint(0, kRecordValuesMax, "record values");
  r.values.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (b.read_constrained_uint(0, 2, "meas value choice")) {
      case kValueInt: r.values.push_back(MeasValue::integer(b.read_fixed_uint64())); break;
      case kValueReal: r.values.push_back(MeasValue::real(b.read_real())); break;
      case kValueNone: r.values.push_back(MeasValue::none()); break;
      default: throw MalformedError("unknown meas value choice");
    }
  }
  return r;
}

void put_records(BitBuffer& b, const std::vector<MeasRecord>& records) {
  b.append_constrained_uint(records.size(), kRecordsMin, kRecordsMax, "records");
  for (const auto& r : records) put_record(b, r);
}

std::vector<MeasRecord> get_records(BitBuffer& b) {
  const auto n = b.read_constrained_uint(kRecordsMin, kRecordsMax, "records");
  std::vector<MeasRecord> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(get_record(b));
  return out;
}

void check_style_order(const RanFunctionDefinition& d, bool decoding) {
  for (std::size_t i = 1; i < d.styles.size(); ++i) {
    if (d.styles[i].style_id <= d.styles[i - 1].style_id) {
      const std::string msg = "style ids not strictly increasing";
      if (decoding) throw MalformedError(msg);
      throw CodecError(msg);
    }
  }
}

void check_ue_ids(const PerUeReport& m, bool decoding) {
  std::set<std::string_view> seen;
  for (const auto& r : m.ue_reports) {
    if (!seen.insert(r.ue_id).second) {
      const std::string msg = "duplicate ue_id '" + r.ue_id + "'";
      if (decoding) throw MalformedError(msg);
      throw CodecError(msg);
    }
  }
}

}  // namespace

Octets encode_event_trigger(const EventTriggerDefinition& t) {
  BitBuffer b;
  b.append_constrained_uint(t.reporting_period_ms, kPeriodMin, kPeriodMax, "reporting_period_ms");
  return b.finalize();
}

EventTriggerDefinition decode_event_trigger(std::span<const std::uint8_t> octets) {
  auto b = BitBuffer::from_octets(octets);
  EventTriggerDefinition t;
  t.reporting_period_ms =
      static_cast<std::uint32_t>(b.read_constrained_uint(kPeriodMin, kPeriodMax, "reporting_period_ms"));
  b.expect_end("event trigger");
  return t;
}

Octets encode_action_definition(const ActionDefinition& a) {
  require_unique<CodecError>(a.metrics, "action metrics");
  BitBuffer b;
  b.append_constrained_uint(a.style_id, 0, kStyleMax, "style_id");
  put_names(b, a.metrics, kActionMetricsMin, kActionMetricsMax, "action metrics");
  b.append_constrained_uint(a.granularity_period_ms, kPeriodMin, kPeriodMax, "granularity_period_ms");
  return b.finalize();
}

ActionDefinition decode_action_definition(std::span<const std::uint8_t> octets) {
  auto b = BitBuffer::from_octets(octets);
  ActionDefinition a;
  a.style_id = static_cast<std::uint32_t>(b.read_constrained_uint(0, kStyleMax, "style_id"));
  a.metrics = get_names(b, kActionMetricsMin, kActionMetricsMax, "action metrics");
  a.granularity_period_ms =
      static_cast<std::uint32_t>(b.read_constrained_uint(kPeriodMin, kPeriodMax, "granularity_period_ms"));
  b.expect_end("action definition");
  require_unique<MalformedError>(a.metrics, "action metrics");
  return a;
}

Octets encode_ran_function_definition(const RanFunctionDefinition& d) {
  check_style_order(d, false);
  BitBuffer b;
  b.append_chars(d.function_name, kNameMin, kNameMax, "function_name");
  b.append_constrained_uint(d.styles.size(), kStylesMin, kStylesMax, "styles");
  for (const auto& s : d.styles) {
    require_unique<CodecError>(s.metrics, "style metrics");
    b.append_constrained_uint(s.style_id, 0, kStyleMax, "style_id");
    put_names(b, s.metrics, 0, kStyleMetricsMax, "style metrics");
  }
  return b.finalize();
}

RanFunctionDefinition decode_ran_function_definition(std::span<const std::uint8_t> octets) {
  auto b = BitBuffer::from_octets(octets);
  RanFunctionDefinition d;
  d.function_name = b.read_chars(kNameMin, kNameMax, "function_name");
  const auto n = b.read_constrained_uint(kStylesMin, kStylesMax, "styles");
  for (std::uint64_t i = 0; i < n; ++i) {
    ReportStyle s;
    s.style_id = static_cast<std::uint32_t>(b.read_constrained_uint(0, kStyleMax, "style_id"));
    s.metrics = get_names(b, 0, kStyleMetricsMax, "style metrics");
    require_unique<MalformedError>(s.metrics, "style metrics");
    d.styles.push_back(std::move(s));
  }
  b.expect_end("ran function definition");
  check_style_order(d, true);
  return d;
}

Octets encode_indication_header(const IndicationHeader& h) {
  BitBuffer b;
  b.append_fixed_uint64(h.collection_start_time_ms);
  b.append_chars(h.sender, kNameMin, kNameMax, "sender");
  return b.finalize();
}

IndicationHeader decode_indication_header(std::span<const std::uint8_t> octets) {
  auto b = BitBuffer::from_octets(octets);
  IndicationHeader h;
  h.collection_start_time_ms = b.read_fixed_uint64();
  h.sender = b.read_chars(kNameMin, kNameMax, "sender");
  b.expect_end("indication header");
  return h;
}

Octets encode_indication_message(const IndicationMessage& m) {
  BitBuffer b;
  if (const auto* node = std::get_if<NodeLevelReport>(&m)) {
    b.append_constrained_uint(kMsgNodeLevel, 0, 1, "indication message choice");
    put_records(b, node->records);
  } else {
    const auto& per_ue = std::get<PerUeReport>(m);
    check_ue_ids(per_ue, false);
    b.append_constrained_uint(kMsgPerUe, 0, 1, "indication message choice");
    b.append_constrained_uint(per_ue.ue_reports.size(), 0, kUeReportsMax, "ue reports");
    for (const auto& r : per_ue.ue_reports) {
      b.append_chars(r.ue_id, kUeIdMin, kUeIdMax, "ue_id");
      put_records(b, r.records);
    }
  }
  return b.finalize();
}

IndicationMessage decode_indication_message(std::span<const std::uint8_t> octets) {
  auto b = BitBuffer::from_octets(octets);
  IndicationMessage out;
  if (b.read_constrained_uint(0, 1, "indication message choice") == kMsgNodeLevel) {
    out = NodeLevelReport{get_records(b)};
  } else {
    PerUeReport per_ue;
    const auto n = b.read_constrained_uint(0, kUeReportsMax, "ue reports");
    for (std::uint64_t i = 0; i < n; ++i) {
      UeReport r;
      r.ue_id = b.read_chars(kUeIdMin, kUeIdMax, "ue_id");
      r.records = get_records(b);
      per_ue.ue_reports.push_back(std::move(r));
    }
    check_ue_ids(per_ue, true);
    out = std::move(per_ue);
  }
  b.expect_end("indication message");
  return out;
}

}  // namespace e2dev::kpm
