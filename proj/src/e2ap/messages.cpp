#include "e2dev/e2ap/messages.hpp"

#include <set>

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/framing.hpp"
#include "e2dev/per/bit_buffer.hpp"

namespace e2dev::e2ap {

using per::BitBuffer;

const char* to_string(Cause c) {
  switch (c) {
    case Cause::unspecified: return "unspecified";
    case Cause::unsupported_function: return "unsupported-function";
    case Cause::unknown_metric: return "unknown-metric";
    case Cause::node_overload: return "node-overload";
    case Cause::node_unavailable: return "node-unavailable";
  }
  return "unknown";
}

// --- PLMN -------------------------------------------------------------------

Plmn Plmn::from_hex(std::string_view hex) {
  auto bytes = e2dev::from_hex(hex);
  if (bytes.size() != 3) throw CodecError("PLMN must be 3 octets, got " + std::to_string(bytes.size()));
  Plmn p;
  std::copy(bytes.begin(), bytes.end(), p.octets.begin());
  if (!p.valid()) throw CodecError("PLMN " + std::string(hex) + " has non-BCD digits");
  return p;
}

std::string Plmn::hex() const { return to_hex(octets); }

bool Plmn::valid() const {
  const int digits[6] = {octets[0] & 0xF, octets[0] >> 4, octets[1] & 0xF,
                         octets[2] & 0xF, octets[2] >> 4, octets[1] >> 4};
  for (int i = 0; i < 5; ++i) {
    if (digits[i] > 9) return false;
  }
  return digits[5] <= 9 || digits[5] == 0xF;
}

std::string Plmn::mcc() const {
  std::string s;
  s.push_back(static_cast<char>('0' + (octets[0] & 0xF)));
  s.push_back(static_cast<char>('0' + (octets[0] >> 4)));
  s.push_back(static_cast<char>('0' + (octets[1] & 0xF)));
  return s;
}

std::string Plmn::mnc() const {
  std::string s;
  s.push_back(static_cast<char>('0' + (octets[2] & 0xF)));
  s.push_back(static_cast<char>('0' + (octets[2] >> 4)));
  if ((octets[1] >> 4) != 0xF) s.push_back(static_cast<char>('0' + (octets[1] >> 4)));
  return s;
}

std::string RicRequestId::str() const {
  return "(" + std::to_string(requestor_id) + "," + std::to_string(instance_id) + ")";
}

// --- field codecs -----------------------------------------------------------

namespace {

void put(BitBuffer& b, const RicRequestId& r) {
  b.append_bits(r.requestor_id, 16);
  b.append_bits(r.instance_id, 16);
}
RicRequestId get_request_id(BitBuffer& b) {
  RicRequestId r;
  r.requestor_id = static_cast<std::uint16_t>(b.read_bits(16));
  r.instance_id = static_cast<std::uint16_t>(b.read_bits(16));
  return r;
}

void put_function_id(BitBuffer& b, std::uint16_t id) { b.append_constrained_uint(id, 0, 4095, "ran_function_id"); }
std::uint16_t get_function_id(BitBuffer& b) {
  return static_cast<std::uint16_t>(b.read_constrained_uint(0, 4095, "ran_function_id"));
}

void put_octets(BitBuffer& b, const Octets& o, std::string_view field) {
  b.append_octets(o, 0, kMaxOctetString, field);
}
Octets get_octets(BitBuffer& b, std::string_view field) { return b.read_octets(0, kMaxOctetString, field); }

void put(BitBuffer& b, Cause c) { b.append_constrained_uint(static_cast<std::uint64_t>(c), 0, kCauseMax, "cause"); }
Cause get_cause(BitBuffer& b) { return static_cast<Cause>(b.read_constrained_uint(0, kCauseMax, "cause")); }

void put(BitBuffer& b, const GlobalE2NodeId& id) {
  if (!id.plmn.valid()) throw CodecError("PLMN " + id.plmn.hex() + " has non-BCD digits");
  for (auto o : id.plmn.octets) b.append_bits(o, 8);
  b.append_bits(id.gnb_id, 32);
}
GlobalE2NodeId get_node_id(BitBuffer& b) {
  GlobalE2NodeId id;
  for (auto& o : id.plmn.octets) o = static_cast<std::uint8_t>(b.read_bits(8));
  if (!id.plmn.valid()) throw MalformedError("PLMN " + id.plmn.hex() + " has non-BCD digits");
  id.gnb_id = static_cast<std::uint32_t>(b.read_bits(32));
  return id;
}

// --- per-message ------------------------------------------------------------

void put(BitBuffer& b, const E2SetupRequest& m) {
  put(b, m.node_id);
  b.append_constrained_uint(m.functions.size(), 1, kMaxFunctions, "functions");
  for (const auto& f : m.functions) {
    put_function_id(b, f.ran_function_id);
    put_octets(b, f.definition, "definition");
    b.append_constrained_uint(f.revision, 0, kMaxRevision, "revision");
  }
}
E2SetupRequest get(BitBuffer& b, std::in_place_type_t<E2SetupRequest>) {
  E2SetupRequest m;
  m.node_id = get_node_id(b);
  const auto n = b.read_constrained_uint(1, kMaxFunctions, "functions");
  for (std::uint64_t i = 0; i < n; ++i) {
    RanFunctionItem f;
    f.ran_function_id = get_function_id(b);
    f.definition = get_octets(b, "definition");
    f.revision = static_cast<std::uint16_t>(b.read_constrained_uint(0, kMaxRevision, "revision"));
    m.functions.push_back(std::move(f));
  }
  return m;
}

void put(BitBuffer& b, const E2SetupResponse& m) {
  b.append_constrained_uint(m.accepted_ids.size(), 0, kMaxFunctions, "accepted_ids");
  for (auto id : m.accepted_ids) put_function_id(b, id);
  b.append_constrained_uint(m.rejected.size(), 0, kMaxFunctions, "rejected_ids");
  for (const auto& r : m.rejected) {
    put_function_id(b, r.ran_function_id);
    put(b, r.cause);
  }
}
E2SetupResponse get(BitBuffer& b, std::in_place_type_t<E2SetupResponse>) {
  E2SetupResponse m;
  auto n = b.read_constrained_uint(0, kMaxFunctions, "accepted_ids");
  for (std::uint64_t i = 0; i < n; ++i) m.accepted_ids.push_back(get_function_id(b));
  n = b.read_constrained_uint(0, kMaxFunctions, "rejected_ids");
  for (std::uint64_t i = 0; i < n; ++i) {
    RejectedFunction r;
    r.ran_function_id = get_function_id(b);
    r.cause = get_cause(b);
    m.rejected.push_back(r);
  }
  return m;
}

void put(BitBuffer& b, const E2SetupFailure& m) { put(b, m.cause); }
E2SetupFailure get(BitBuffer& b, std::in_place_type_t<E2SetupFailure>) { return {get_cause(b)}; }

void put(BitBuffer& b, const RicSubscriptionRequest& m) {
  put(b, m.request_id);
  put_function_id(b, m.ran_function_id);
  put_octets(b, m.event_trigger, "event_trigger");
  b.append_constrained_uint(m.actions.size(), kMinActions, kMaxActions, "actions");
  for (const auto& a : m.actions) {
    b.append_bits(a.action_id, 8);
    put_octets(b, a.definition, "action definition");
  }
}
RicSubscriptionRequest get(BitBuffer& b, std::in_place_type_t<RicSubscriptionRequest>) {
  RicSubscriptionRequest m;
  m.request_id = get_request_id(b);
  m.ran_function_id = get_function_id(b);
  m.event_trigger = get_octets(b, "event_trigger");
  const auto n = b.read_constrained_uint(kMinActions, kMaxActions, "actions");
  for (std::uint64_t i = 0; i < n; ++i) {
    RicAction a;
    a.action_id = static_cast<std::uint8_t>(b.read_bits(8));
    a.definition = get_octets(b, "action definition");
    m.actions.push_back(std::move(a));
  }
  return m;
}

void put(BitBuffer& b, const RicSubscriptionResponse& m) {
  put(b, m.request_id);
  b.append_constrained_uint(m.admitted_action_ids.size(), 0, kMaxActions, "admitted");
  for (auto id : m.admitted_action_ids) b.append_bits(id, 8);
  b.append_constrained_uint(m.not_admitted.size(), 0, kMaxActions, "not_admitted");
  for (const auto& a : m.not_admitted) {
    b.append_bits(a.action_id, 8);
    put(b, a.cause);
  }
}
RicSubscriptionResponse get(BitBuffer& b, std::in_place_type_t<RicSubscriptionResponse>) {
  RicSubscriptionResponse m;
  m.request_id = get_request_id(b);
  auto n = b.read_constrained_uint(0, kMaxActions, "admitted");
  for (std::uint64_t i = 0; i < n; ++i) m.admitted_action_ids.push_back(static_cast<std::uint8_t>(b.read_bits(8)));
  n = b.read_constrained_uint(0, kMaxActions, "not_admitted");
  for (std::uint64_t i = 0; i < n; ++i) {
    NotAdmittedAction a;
    a.action_id = static_cast<std::uint8_t>(b.read_bits(8));
    a.cause = get_cause(b);
    m.not_admitted.push_back(a);
  }
  return m;
}

void put(BitBuffer& b, const RicSubscriptionFailure& m) {
  put(b, m.request_id);
  put(b, m.cause);
}
RicSubscriptionFailure get(BitBuffer& b, std::in_place_type_t<RicSubscriptionFailure>) {
  RicSubscriptionFailure m;
  m.request_id = get_request_id(b);
  m.cause = get_cause(b);
  return m;
}

void put(BitBuffer& b, const RicIndication& m) {
  put(b, m.request_id);
  b.append_bits(m.action_id, 8);
  b.append_bits(m.sequence_number, 32);
  put_octets(b, m.header, "indication header");
  put_octets(b, m.message, "indication message");
}
RicIndication get(BitBuffer& b, std::in_place_type_t<RicIndication>) {
  RicIndication m;
  m.request_id = get_request_id(b);
  m.action_id = static_cast<std::uint8_t>(b.read_bits(8));
  m.sequence_number = static_cast<std::uint32_t>(b.read_bits(32));
  m.header = get_octets(b, "indication header");
  m.message = get_octets(b, "indication message");
  return m;
}

void put(BitBuffer& b, const RicSubscriptionDeleteRequest& m) { put(b, m.request_id); }
RicSubscriptionDeleteRequest get(BitBuffer& b, std::in_place_type_t<RicSubscriptionDeleteRequest>) {
  return {get_request_id(b)};
}

void put(BitBuffer& b, const RicSubscriptionDeleteResponse& m) { put(b, m.request_id); }
RicSubscriptionDeleteResponse get(BitBuffer& b, std::in_place_type_t<RicSubscriptionDeleteResponse>) {
  return {get_request_id(b)};
}

void put(BitBuffer& b, const RicControlRequest& m) {
  put(b, m.request_id);
  put_function_id(b, m.ran_function_id);
  put_octets(b, m.header, "control header");
  put_octets(b, m.message, "control message");
  b.append_bool(m.ack_requested);
}
RicControlRequest get(BitBuffer& b, std::in_place_type_t<RicControlRequest>) {
  RicControlRequest m;
  m.request_id = get_request_id(b);
  m.ran_function_id = get_function_id(b);
  m.header = get_octets(b, "control header");
  m.message = get_octets(b, "control message");
  m.ack_requested = b.read_bool();
  return m;
}

void put(BitBuffer& b, const RicControlAcknowledge& m) { put(b, m.request_id); }
RicControlAcknowledge get(BitBuffer& b, std::in_place_type_t<RicControlAcknowledge>) {
  return {get_request_id(b)};
}

void put(BitBuffer& b, const ErrorIndication& m) { put(b, m.cause); }
ErrorIndication get(BitBuffer& b, std::in_place_type_t<ErrorIndication>) { return {get_cause(b)}; }

template <std::size_t I = 0>
Message decode_alternative(std::size_t index, BitBuffer& b) {
  if constexpr (I < std::variant_size_v<Message>) {
    if (index == I) return Message(std::in_place_index<I>, get(b, std::in_place_type<std::variant_alternative_t<I, Message>>));
    return decode_alternative<I + 1>(index, b);
  } else {
    throw ProtocolError("unknown E2AP message type");
  }
}

}  // namespace

std::uint8_t type_code(const Message& m) { return static_cast<std::uint8_t>(m.index() + kFirstType); }

const char* type_name(std::uint8_t code) {
  static constexpr const char* kNames[] = {
      "E2SetupRequest",         "E2SetupResponse",
      "E2SetupFailure",         "RicSubscriptionRequest",
      "RicSubscriptionResponse", "RicSubscriptionFailure",
      "RicIndication",          "RicSubscriptionDeleteRequest",
      "RicSubscriptionDeleteResponse", "RicControlRequest",
      "RicControlAcknowledge",  "ErrorIndication",
  };
  if (code < kFirstType || code > kLastType) return "Unknown";
  return kNames[code - kFirstType];
}

Octets encode_payload(const Message& m) {
  BitBuffer b;
  std::visit([&](const auto& msg) { put(b, msg); }, m);
  return b.finalize();
}

Message decode_payload(std::uint8_t type, std::span<const std::uint8_t> payload) {
  if (type < kFirstType || type > kLastType) {
    throw ProtocolError("unknown E2AP message type " + std::to_string(type));
  }
  auto b = BitBuffer::from_octets(payload);
  Message m = decode_alternative(type - kFirstType, b);
  b.expect_end(type_name(type));
  return m;
}

Octets frame(const Message& m) { return encode_frame(type_code(m), encode_payload(m)); }

Parsed parse(std::span<const std::uint8_t> bytes) {
  auto raw = split_frame(bytes);
  return Parsed{decode_payload(raw.type, raw.payload), raw.consumed};
}

}  // namespace e2dev::e2ap
