#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace e2dev {

using Octets = std::vector<std::uint8_t>;

// Uppercase, no separators: {0x03, 0xE7} -> "03E7".
std::string to_hex(std::span<const std::uint8_t> bytes);

// Accepts either case; whitespace is ignored. Throws CodecError on odd length
// or non-hex characters.
Octets from_hex(std::string_view text);

}  // namespace e2dev
