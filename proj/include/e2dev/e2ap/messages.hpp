#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "e2dev/common/hex.hpp"

namespace e2dev::e2ap {

enum class Cause : std::uint8_t {
  unspecified = 0,
  unsupported_function = 1,
  unknown_metric = 2,
  node_overload = 3,
  node_unavailable = 4,
};
inline constexpr std::uint64_t kCauseMax = 4;

const char* to_string(Cause c);

/// 3GPP PLMN identity, BCD packed:
/// octet1 = mcc2<<4 | mcc1, octet2 = mnc3<<4 | mcc3 (mnc3 = 0xF for a
/// two-digit MNC), octet3 = mnc2<<4 | mnc1.
struct Plmn {
  std::array<std::uint8_t, 3> octets{};

  static Plmn from_hex(std::string_view hex);  // "00F110"
  std::string hex() const;                     // uppercase
  std::string mcc() const;                     // "001"
  std::string mnc() const;                     // "01" or three digits
  bool valid() const;

  friend auto operator<=>(const Plmn&, const Plmn&) = default;
};

struct GlobalE2NodeId {
  Plmn plmn;
  std::uint32_t gnb_id = 0;
  friend auto operator<=>(const GlobalE2NodeId&, const GlobalE2NodeId&) = default;
};

struct RicRequestId {
  std::uint16_t requestor_id = 0;
  std::uint16_t instance_id = 0;
  std::string str() const;
  friend auto operator<=>(const RicRequestId&, const RicRequestId&) = default;
};

struct RanFunctionItem {
  std::uint16_t ran_function_id = 0;
  Octets definition;
  std::uint16_t revision = 0;
  friend bool operator==(const RanFunctionItem&, const RanFunctionItem&) = default;
};

struct RejectedFunction {
  std::uint16_t ran_function_id = 0;
  Cause cause = Cause::unspecified;
  friend bool operator==(const RejectedFunction&, const RejectedFunction&) = default;
};

struct RicAction {
  std::uint8_t action_id = 0;
  Octets definition;
  friend bool operator==(const RicAction&, const RicAction&) = default;
};

struct NotAdmittedAction {
  std::uint8_t action_id = 0;
  Cause cause = Cause::unspecified;
  friend bool operator==(const NotAdmittedAction&, const NotAdmittedAction&) = default;
};

struct E2SetupRequest {
  GlobalE2NodeId node_id;
  std::vector<RanFunctionItem> functions;
  friend bool operator==(const E2SetupRequest&, const E2SetupRequest&) = default;
};

struct E2SetupResponse {
  std::vector<std::uint16_t> accepted_ids;
  std::vector<RejectedFunction> rejected;
  friend bool operator==(const E2SetupResponse&, const E2SetupResponse&) = default;
};

struct E2SetupFailure {
  Cause cause = Cause::unspecified;
  friend bool operator==(const E2SetupFailure&, const E2SetupFailure&) = default;
};

struct RicSubscriptionRequest {
  RicRequestId request_id;
  std::uint16_t ran_function_id = 0;
  Octets event_trigger;
  std::vector<RicAction> actions;
  friend bool operator==(const RicSubscriptionRequest&, const RicSubscriptionRequest&) = default;
};

struct RicSubscriptionResponse {
  RicRequestId request_id;
  std::vector<std::uint8_t> admitted_action_ids;
  std::vector<NotAdmittedAction> not_admitted;
  friend bool operator==(const RicSubscriptionResponse&, const RicSubscriptionResponse&) = default;
};

struct RicSubscriptionFailure {
  RicRequestId request_id;
  Cause cause = Cause::unspecified;
  friend bool operator==(const RicSubscriptionFailure&, const RicSubscriptionFailure&) = default;
};

struct RicIndication {
  RicRequestId request_id;
  std::uint8_t action_id = 0;
  std::uint32_t sequence_number = 0;
  Octets header;
  Octets message;
  friend bool operator==(const RicIndication&, const RicIndication&) = default;
};

struct RicSubscriptionDeleteRequest {
  RicRequestId request_id;
  friend bool operator==(const RicSubscriptionDeleteRequest&, const RicSubscriptionDeleteRequest&) = default;
};

struct RicSubscriptionDeleteResponse {
  RicRequestId request_id;
  friend bool operator==(const RicSubscriptionDeleteResponse&, const RicSubscriptionDeleteResponse&) = default;
};

struct RicControlRequest {
  RicRequestId request_id;
  std::uint16_t ran_function_id = 0;
  Octets header;
  Octets message;
  bool ack_requested = true;
  friend bool operator==(const RicControlRequest&, const RicControlRequest&) = default;
};

struct RicControlAcknowledge {
  RicRequestId request_id;
  friend bool operator==(const RicControlAcknowledge&, const RicControlAcknowledge&) = default;
};

struct ErrorIndication {
  Cause cause = Cause::unspecified;
  friend bool operator==(const ErrorIndication&, const ErrorIndication&) = default;
};

// Alternative index + 1 is the wire type code.
using Message = std::variant<E2SetupRequest, E2SetupResponse, E2SetupFailure, RicSubscriptionRequest,
                             RicSubscriptionResponse, RicSubscriptionFailure, RicIndication,
                             RicSubscriptionDeleteRequest, RicSubscriptionDeleteResponse,
                             RicControlRequest, RicControlAcknowledge, ErrorIndication>;

inline constexpr std::uint8_t kFirstType = 1;
inline constexpr std::uint8_t kLastType = 12;

std::uint8_t type_code(const Message& m);
const char* type_name(std::uint8_t type_code);

// Wire bounds.
inline constexpr std::size_t kMaxOctetString = (std::size_t{1} << 24) - 1;
inline constexpr std::size_t kMaxFunctions = 256;
inline constexpr std::size_t kMinActions = 1;
inline constexpr std::size_t kMaxActions = 16;
inline constexpr std::uint16_t kMaxRevision = 4095;

// Payload only (no length/type header).
Octets encode_payload(const Message& m);
Message decode_payload(std::uint8_t type, std::span<const std::uint8_t> payload);

Octets frame(const Message& m);

struct Parsed {
  Message message;
  std::size_t consumed = 0;
};

// Parses exactly one frame from the front of `bytes`; bytes past the declared
// length are left alone. Unknown type -> ProtocolError; short input ->
// TruncationError; bad payload -> CodecError.
Parsed parse(std::span<const std::uint8_t> bytes);

}  // namespace e2dev::e2ap
