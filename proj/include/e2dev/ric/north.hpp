#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "e2dev/common/hex.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/e2ap/subscription_fsm.hpp"

// xApp <-> RIC message family, carried over the same framing as E2AP with
// type codes starting at 100. Octet payloads travel as uppercase hex text.
namespace e2dev::ric::north {

struct XAppRegister {  // 100
  std::string xapp_id;
  friend bool operator==(const XAppRegister&, const XAppRegister&) = default;
};

struct InventoryRequest {  // 101
  friend bool operator==(const InventoryRequest&, const InventoryRequest&) = default;
};

struct InventoryResponse {  // 102; UTF-8 JSON array of inventory records
  std::string json;
  friend bool operator==(const InventoryResponse&, const InventoryResponse&) = default;
};

struct FunctionDefsRequest {  // 103
  std::string node;
  friend bool operator==(const FunctionDefsRequest&, const FunctionDefsRequest&) = default;
};

struct FunctionDef {
  std::uint16_t ran_function_id = 0;
  std::string definition_hex;
  std::string sm_name;  // empty when the RIC has no binding for the id
  std::string version;
  friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

struct FunctionDefsResponse {  // 104
  std::vector<FunctionDef> functions;
  friend bool operator==(const FunctionDefsResponse&, const FunctionDefsResponse&) = default;
};

struct SubscribeRequest {  // 105
  std::string node;
  std::uint16_t ran_function_id = 0;
  std::string event_trigger_hex;
  std::string action_hex;
  friend bool operator==(const SubscribeRequest&, const SubscribeRequest&) = default;
};

struct SubscribeResponse {  // 106
  e2ap::RicRequestId request_id;
  bool admitted = false;
  e2ap::Cause cause = e2ap::Cause::unspecified;
  friend bool operator==(const SubscribeResponse&, const SubscribeResponse&) = default;
};

struct IndicationForward {  // 107
  e2ap::RicRequestId request_id;
  std::uint32_t sn = 0;
  e2ap::SnVerdict verdict = e2ap::SnVerdict::ok;
  std::string header_hex;
  std::string message_hex;
  friend bool operator==(const IndicationForward&, const IndicationForward&) = default;
};

struct ControlForward {  // 108
  std::string node;
  std::uint16_t ran_function_id = 0;
  std::string header_hex;
  std::string message_hex;
  friend bool operator==(const ControlForward&, const ControlForward&) = default;
};

struct ControlResult {  // 109
  bool acked = false;
  friend bool operator==(const ControlResult&, const ControlResult&) = default;
};

struct SubscriptionDeleteRequest {  // 110
  e2ap::RicRequestId request_id;
  friend bool operator==(const SubscriptionDeleteRequest&, const SubscriptionDeleteRequest&) = default;
};

struct SubscriptionDeleteResponse {  // 111
  e2ap::RicRequestId request_id;
  friend bool operator==(const SubscriptionDeleteResponse&, const SubscriptionDeleteResponse&) = default;
};

struct XAppRegisterAck {  // 112
  bool accepted = false;
  friend bool operator==(const XAppRegisterAck&, const XAppRegisterAck&) = default;
};

// Unsolicited: the subscription was closed by the RIC (e.g. node lost).
struct SubscriptionEnded {  // 113
  e2ap::RicRequestId request_id;
  e2ap::Cause cause = e2ap::Cause::unspecified;
  friend bool operator==(const SubscriptionEnded&, const SubscriptionEnded&) = default;
};

using Message = std::variant<XAppRegister, InventoryRequest, InventoryResponse, FunctionDefsRequest,
                             FunctionDefsResponse, SubscribeRequest, SubscribeResponse,
                             IndicationForward, ControlForward, ControlResult,
                             SubscriptionDeleteRequest, SubscriptionDeleteResponse,
                             XAppRegisterAck, SubscriptionEnded>;

inline constexpr std::uint8_t kFirstType = 100;
inline constexpr std::uint8_t kLastType = 113;

inline bool is_north_type(std::uint8_t t) { return t >= kFirstType && t <= kLastType; }

std::uint8_t type_code(const Message& m);

Octets encode_payload(const Message& m);
Message decode_payload(std::uint8_t type, std::span<const std::uint8_t> payload);
Octets frame(const Message& m);

}  // namespace e2dev::ric::north
