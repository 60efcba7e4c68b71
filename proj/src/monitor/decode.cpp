#include "e2dev/monitor/decode.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "e2dev/common/error.hpp"
#include "e2dev/common/hex.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/kpm/codec.hpp"

namespace e2dev::monitor {

using Json = nlohmann::ordered_json;

const std::vector<std::string>& decode_types() {
  static const std::vector<std::string> kTypes{"event-trigger", "action",       "ranfdef",
                                               "ind-header",    "ind-message",  "e2ap-frame"};
  return kTypes;
}

namespace {

Json to_json(const kpm::MeasValue& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_real()) return v.as_real();
  return "no_value";
}

Json to_json(const std::vector<kpm::MeasRecord>& records) {
  auto arr = Json::array();
  for (const auto& r : records) {
    auto vals = Json::array();
    for (const auto& v : r.values) vals.push_back(to_json(v));
    arr.push_back(std::move(vals));
  }
  return arr;
}

Json to_json(const kpm::IndicationMessage& m) {
  Json j;
  if (const auto* n = std::get_if<kpm::NodeLevelReport>(&m)) {
    j["format"] = "node-level";
    j["records"] = to_json(n->records);
  } else {
    j["format"] = "per-ue";
    auto ues = Json::array();
    for (const auto& u : std::get<kpm::PerUeReport>(m).ue_reports) {
      Json ue;
      ue["ue_id"] = u.ue_id;
      ue["records"] = to_json(u.records);
      ues.push_back(std::move(ue));
    }
    j["ue_reports"] = std::move(ues);
  }
  return j;
}

Json rid(const e2ap::RicRequestId& r) {
  Json j;
  j["requestor_id"] = r.requestor_id;
  j["instance_id"] = r.instance_id;
  return j;
}

Json to_json(const e2ap::Message& m) {
  Json j;
  j["type"] = std::to_string(e2ap::type_code(m)) + " (" + e2ap::type_name(e2ap::type_code(m)) + ")";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        using namespace e2ap;
        if constexpr (std::is_same_v<T, E2SetupRequest>) {
          j["plmn"] = x.node_id.plmn.hex();
          j["gnb_id"] = x.node_id.gnb_id;
          auto fs = Json::array();
          for (const auto& f : x.functions) {
            fs.push_back(Json{{"ran_function_id", f.ran_function_id},
                              {"revision", f.revision},
                              {"definition", to_hex(f.definition)}});
          }
          j["functions"] = std::move(fs);
        } else if constexpr (std::is_same_v<T, E2SetupResponse>) {
          j["accepted"] = x.accepted_ids;
          auto rs = Json::array();
          for (const auto& r : x.rejected) rs.push_back(Json{{"ran_function_id", r.ran_function_id}, {"cause", to_string(r.cause)}});
          j["rejected"] = std::move(rs);
        } else if constexpr (std::is_same_v<T, E2SetupFailure> || std::is_same_v<T, ErrorIndication>) {
          j["cause"] = to_string(x.cause);
        } else if constexpr (std::is_same_v<T, RicSubscriptionRequest>) {
          j["request_id"] = rid(x.request_id);
          j["ran_function_id"] = x.ran_function_id;
          j["event_trigger"] = to_hex(x.event_trigger);
          auto as = Json::array();
          for (const auto& a : x.actions) as.push_back(Json{{"action_id", a.action_id}, {"definition", to_hex(a.definition)}});
          j["actions"] = std::move(as);
        } else if constexpr (std::is_same_v<T, RicSubscriptionResponse>) {
          j["request_id"] = rid(x.request_id);
          j["admitted"] = x.admitted_action_ids;
          auto ns = Json::array();
          for (const auto& n : x.not_admitted) ns.push_back(Json{{"action_id", n.action_id}, {"cause", to_string(n.cause)}});
          j["not_admitted"] = std::move(ns);
        } else if constexpr (std::is_same_v<T, RicSubscriptionFailure>) {
          j["request_id"] = rid(x.request_id);
          j["cause"] = to_string(x.cause);
        } else if constexpr (std::is_same_v<T, RicIndication>) {
          j["request_id"] = rid(x.request_id);
          j["action_id"] = x.action_id;
          j["sequence_number"] = x.sequence_number;
          j["header"] = to_hex(x.header);
          j["message"] = to_hex(x.message);
        } else if constexpr (std::is_same_v<T, RicControlRequest>) {
          j["request_id"] = rid(x.request_id);
          j["ran_function_id"] = x.ran_function_id;
          j["header"] = to_hex(x.header);
          j["message"] = to_hex(x.message);
          j["ack_requested"] = x.ack_requested;
        } else {
          j["request_id"] = rid(x.request_id);
        }
      },
      m);
  return j;
}

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    std::ostringstream s;
    s.precision(17);
    s << j.get<double>();
    return s.str();
  }
  return j.dump();
}

// YAML-like rendering: objects as "key: value", arrays of scalars inline.
void render(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto inline_array = [](const Json& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + scalar(a[i]);
    return s + "]";
  };
  auto all_scalar = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& e) { return !e.is_structured(); });
  };
  auto is_matrix = [&](const Json& a) {
    return std::all_of(a.begin(), a.end(), [&](const Json& e) { return e.is_array() && all_scalar(e); });
  };
  for (const auto& [key, v] : j.items()) {
    if (v.is_object()) {
      out << pad << key << ":\n";
      render(v, indent + 2, out);
    } else if (v.is_array() && all_scalar(v)) {
      out << pad << key << ": " << inline_array(v) << '\n';
    } else if (v.is_array() && is_matrix(v)) {
      out << pad << key << ":\n";
      for (const auto& e : v) out << pad << "  - " << inline_array(e) << '\n';
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& e : v) {
        out << pad << "  -\n";
        render(e, indent + 4, out);
      }
    } else {
      out << pad << key << ": " << scalar(v) << '\n';
    }
  }
}

void check_same(const Octets& in, const Octets& again) {
  if (in != again) throw CodecError("verify failed: re-encoded " + to_hex(again) + " != input " + to_hex(in));
}

}  // namespace

std::string decode_pretty(const std::string& type, const std::string& hex, bool verify) {
  const Octets bytes = from_hex(hex);
  Json j;
  if (type == "event-trigger") {
    const auto t = kpm::decode_event_trigger(bytes);
    if (verify) check_same(bytes, kpm::encode_event_trigger(t));
    j["reporting_period_ms"] = t.reporting_period_ms;
  } else if (type == "action") {
    const auto a = kpm::decode_action_definition(bytes);
    if (verify) check_same(bytes, kpm::encode_action_definition(a));
    j["style_id"] = a.style_id;
    j["metrics"] = a.metrics;
    j["granularity_period_ms"] = a.granularity_period_ms;
  } else if (type == "ranfdef") {
    const auto d = kpm::decode_ran_function_definition(bytes);
    if (verify) check_same(bytes, kpm::encode_ran_function_definition(d));
    j["function_name"] = d.function_name;
    j["styles"] = kpm::format_summary(kpm::function_definition_summary(d));
  } else if (type == "ind-header") {
    const auto h = kpm::decode_indication_header(bytes);
    if (verify) check_same(bytes, kpm::encode_indication_header(h));
    j["collection_start_time_ms"] = h.collection_start_time_ms;
    j["sender"] = h.sender;
  } else if (type == "ind-message") {
    const auto m = kpm::decode_indication_message(bytes);
    if (verify) check_same(bytes, kpm::encode_indication_message(m));
    j = to_json(m);
  } else if (type == "e2ap-frame") {
    const auto parsed = e2ap::parse(bytes);
    if (parsed.consumed != bytes.size()) {
      throw MalformedError(std::to_string(bytes.size() - parsed.consumed) + " bytes after the frame");
    }
    if (verify) check_same(bytes, e2ap::frame(parsed.message));
    j = to_json(parsed.message);
  } else {
    throw CodecError("unknown decode type '" + type + "'");
  }
  std::ostringstream out;
  render(j, 0, out);
  if (verify) out << "verify: ok\n";
  return out.str();
}

}  // namespace e2dev::monitor
