#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "e2dev/common/hex.hpp"

namespace e2dev::e2ap {

// Frame layout: len (u32 big-endian, counts the type octet and the payload),
// type (1 octet), payload. Shared by the E2 (1..12) and north (100..) message
// families.
inline constexpr std::size_t kFrameHeaderSize = 5;
inline constexpr std::size_t kMaxFrameLength = std::size_t{1} << 24;

Octets encode_frame(std::uint8_t type, std::span<const std::uint8_t> payload);

struct RawFrame {
  std::uint8_t type = 0;
  Octets payload;
  std::size_t consumed = 0;  // octets of input used by this frame
};

// Splits one frame off the front of `bytes`. Returns nullopt when more bytes
// are needed. Throws FrameError for a zero or oversized length field.
std::optional<RawFrame> try_split_frame(std::span<const std::uint8_t> bytes);

// As above but throws TruncationError when the frame is incomplete.
RawFrame split_frame(std::span<const std::uint8_t> bytes);

}  // namespace e2dev::e2ap
