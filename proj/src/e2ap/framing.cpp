#include "e2dev/e2ap/framing.hpp"

#include <string>

#include "e2dev/common/error.hpp"

namespace e2dev::e2ap {

Octets encode_frame(std::uint8_t type, std::span<const std::uint8_t> payload) {
  const std::size_t len = payload.size() + 1;
  if (len > kMaxFrameLength) {
    throw FrameError("frame payload of " + std::to_string(payload.size()) + " octets exceeds limit");
  }
  Octets out;
  out.reserve(kFrameHeaderSize + payload.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
  out.push_back(type);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::optional<RawFrame> try_split_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) return std::nullopt;
  const std::size_t len = std::size_t{bytes[0]} << 24 | std::size_t{bytes[1]} << 16 |
                          std::size_t{bytes[2]} << 8 | bytes[3];
  if (len == 0) throw FrameError("frame length 0 (type octet missing)");
  if (len > kMaxFrameLength) throw FrameError("frame length " + std::to_string(len) + " exceeds limit");
  if (bytes.size() < 4 + len) return std::nullopt;
  RawFrame f;
  f.type = bytes[4];
  f.payload.assign(bytes.begin() + kFrameHeaderSize, bytes.begin() + static_cast<std::ptrdiff_t>(4 + len));
  f.consumed = 4 + len;
  return f;
}

RawFrame split_frame(std::span<const std::uint8_t> bytes) {
  auto f = try_split_frame(bytes);
  if (!f) {
    std::size_t declared = 0;
    if (bytes.size() >= 4) {
      declared = std::size_t{bytes[0]} << 24 | std::size_t{bytes[1]} << 16 |
                 std::size_t{bytes[2]} << 8 | bytes[3];
    }
    throw TruncationError("truncated frame: have " + std::to_string(bytes.size()) +
                          " octets, need " + std::to_string(bytes.size() < 4 ? 4 : 4 + declared));
  }
  return std::move(*f);
}

}  // namespace e2dev::e2ap
