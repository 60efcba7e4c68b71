#pragma once

#include <span>

#include "e2dev/common/hex.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::kpm {

// Every encoder validates the type's invariants and throws RangeError or
// ValidationError-derived CodecError on violation. Every decoder is strict:
// the input must be exactly one finalized encoding (zero padding, no trailing
// octets) and all invariants must hold, otherwise a CodecError is thrown.

Octets encode_event_trigger(const EventTriggerDefinition& t);
EventTriggerDefinition decode_event_trigger(std::span<const std::uint8_t> octets);

Octets encode_action_definition(const ActionDefinition& a);
ActionDefinition decode_action_definition(std::span<const std::uint8_t> octets);

Octets encode_ran_function_definition(const RanFunctionDefinition& d);
RanFunctionDefinition decode_ran_function_definition(std::span<const std::uint8_t> octets);

Octets encode_indication_header(const IndicationHeader& h);
IndicationHeader decode_indication_header(std::span<const std::uint8_t> octets);

Octets encode_indication_message(const IndicationMessage& m);
IndicationMessage decode_indication_message(std::span<const std::uint8_t> octets);

}  // namespace e2dev::kpm
