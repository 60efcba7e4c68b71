#include "e2dev/ric/north.hpp"

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/framing.hpp"
#include "e2dev/per/bit_buffer.hpp"

namespace e2dev::ric::north {

using per::BitBuffer;

namespace {

constexpr std::size_t kNameMax = 150;
constexpr std::size_t kTextMax = (std::size_t{1} << 25) - 1;

void put_name(BitBuffer& b, const std::string& s, std::string_view f) { b.append_chars(s, 1, kNameMax, f); }
std::string get_name(BitBuffer& b, std::string_view f) { return b.read_chars(1, kNameMax, f); }
void put_text(BitBuffer& b, const std::string& s, std::string_view f) { b.append_chars(s, 0, kTextMax, f); }
std::string get_text(BitBuffer& b, std::string_view f) { return b.read_chars(0, kTextMax, f); }

void put_rid(BitBuffer& b, const e2ap::RicRequestId& r) {
  b.append_bits(r.requestor_id, 16);
  b.append_bits(r.instance_id, 16);
}
e2ap::RicRequestId get_rid(BitBuffer& b) {
  e2ap::RicRequestId r;
  r.requestor_id = static_cast<std::uint16_t>(b.read_bits(16));
  r.instance_id = static_cast<std::uint16_t>(b.read_bits(16));
  return r;
}

void put_fid(BitBuffer& b, std::uint16_t id) { b.append_constrained_uint(id, 0, 4095, "ran_function_id"); }
std::uint16_t get_fid(BitBuffer& b) {
  return static_cast<std::uint16_t>(b.read_constrained_uint(0, 4095, "ran_function_id"));
}

void put_cause(BitBuffer& b, e2ap::Cause c) {
  b.append_constrained_uint(static_cast<std::uint64_t>(c), 0, e2ap::kCauseMax, "cause");
}
e2ap::Cause get_cause(BitBuffer& b) {
  return static_cast<e2ap::Cause>(b.read_constrained_uint(0, e2ap::kCauseMax, "cause"));
}

void put(BitBuffer& b, const XAppRegister& m) { put_name(b, m.xapp_id, "xapp_id"); }
void put(BitBuffer&, const InventoryRequest&) {}
void put(BitBuffer& b, const InventoryResponse& m) { put_text(b, m.json, "inventory json"); }
void put(BitBuffer& b, const FunctionDefsRequest& m) { put_name(b, m.node, "node"); }
void put(BitBuffer& b, const FunctionDefsResponse& m) {
  b.append_constrained_uint(m.functions.size(), 0, e2ap::kMaxFunctions, "functions");
  for (const auto& f : m.functions) {
    put_fid(b, f.ran_function_id);
    put_text(b, f.definition_hex, "definition_hex");
    b.append_chars(f.sm_name, 0, kNameMax, "sm_name");
    b.append_chars(f.version, 0, kNameMax, "version");
  }
}
void put(BitBuffer& b, const SubscribeRequest& m) {
  put_name(b, m.node, "node");
  put_fid(b, m.ran_function_id);
  put_text(b, m.event_trigger_hex, "event_trigger_hex");
  put_text(b, m.action_hex, "action_hex");
}
void put(BitBuffer& b, const SubscribeResponse& m) {
  put_rid(b, m.request_id);
  b.append_bool(m.admitted);
  put_cause(b, m.cause);
}
void put(BitBuffer& b, const IndicationForward& m) {
  put_rid(b, m.request_id);
  b.append_bits(m.sn, 32);
  b.append_constrained_uint(static_cast<std::uint64_t>(m.verdict), 0, 2, "verdict");
  put_text(b, m.header_hex, "header_hex");
  put_text(b, m.message_hex, "message_hex");
}
void put(BitBuffer& b, const ControlForward& m) {
  put_name(b, m.node, "node");
  put_fid(b, m.ran_function_id);
  put_text(b, m.header_hex, "header_hex");
  put_text(b, m.message_hex, "message_hex");
}
void put(BitBuffer& b, const ControlResult& m) { b.append_bool(m.acked); }
void put(BitBuffer& b, const SubscriptionDeleteRequest& m) { put_rid(b, m.request_id); }
void put(BitBuffer& b, const SubscriptionDeleteResponse& m) { put_rid(b, m.request_id); }
void put(BitBuffer& b, const XAppRegisterAck& m) { b.append_bool(m.accepted); }
void put(BitBuffer& b, const SubscriptionEnded& m) {
  put_rid(b, m.request_id);
  put_cause(b, m.cause);
}

Message get(BitBuffer& b, std::uint8_t type) {
  switch (type) {
    case 100: return XAppRegister{get_name(b, "xapp_id")};
    case 101: return InventoryRequest{};
    case 102: return InventoryResponse{get_text(b, "inventory json")};
    case 103: return FunctionDefsRequest{get_name(b, "node")};
    case 104: {
      FunctionDefsResponse m;
      const auto n = b.read_constrained_uint(0, e2ap::kMaxFunctions, "functions");
      for (std::uint64_t i = 0; i < n; ++i) {
        FunctionDef f;
        f.ran_function_id = get_fid(b);
        f.definition_hex = get_text(b, "definition_hex");
        f.sm_name = b.read_chars(0, kNameMax, "sm_name");
        f.version = b.read_chars(0, kNameMax, "version");
        m.functions.push_back(std::move(f));
      }
      return m;
    }
    case 105: {
      SubscribeRequest m;
      m.node = get_name(b, "node");
      m.ran_function_id = get_fid(b);
      m.event_trigger_hex = get_text(b, "event_trigger_hex");
      m.action_hex = get_text(b, "action_hex");
      return m;
    }
    case 106: {
      SubscribeResponse m;
      m.request_id = get_rid(b);
      m.admitted = b.read_bool();
      m.cause = get_cause(b);
      return m;
    }
    case 107: {
      IndicationForward m;
      m.request_id = get_rid(b);
      m.sn = static_cast<std::uint32_t>(b.read_bits(32));
      m.verdict = static_cast<e2ap::SnVerdict>(b.read_constrained_uint(0, 2, "verdict"));
      m.header_hex = get_text(b, "header_hex");
      m.message_hex = get_text(b, "message_hex");
      return m;
    }
    case 108: {
      ControlForward m;
      m.node = get_name(b, "node");
      m.ran_function_id = get_fid(b);
      m.header_hex = get_text(b, "header_hex");
      m.message_hex = get_text(b, "message_hex");
      return m;
    }
    case 109: return ControlResult{b.read_bool()};
    case 110: return SubscriptionDeleteRequest{get_rid(b)};
    case 111: return SubscriptionDeleteResponse{get_rid(b)};
    case 112: return XAppRegisterAck{b.read_bool()};
    case 113: {
      SubscriptionEnded m;
      m.request_id = get_rid(b);
      m.cause = get_cause(b);
      return m;
    }
    default: throw ProtocolError("unknown north message type " + std::to_string(type));
  }
}

}  // namespace

std::uint8_t type_code(const Message& m) { return static_cast<std::uint8_t>(kFirstType + m.index()); }

Octets encode_payload(const Message& m) {
  BitBuffer b;
  std::visit([&](const auto& msg) { put(b, msg); }, m);
  return b.finalize();
}

Message decode_payload(std::uint8_t type, std::span<const std::uint8_t> payload) {
  auto b = BitBuffer::from_octets(payload);
  auto m = get(b, type);
  b.expect_end("north message");
  return m;
}

Octets frame(const Message& m) { return e2ap::encode_frame(type_code(m), encode_payload(m)); }

}  // namespace e2dev::ric::north
