#include "e2dev/common/hex.hpp"

#include <cctype>

#include "e2dev/common/error.hpp"

namespace e2dev {

namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

Octets from_hex(std::string_view text) {
  std::string digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (nibble(c) < 0) {
      throw CodecError("invalid hex character '" + std::string(1, c) + "'");
    }
    digits.push_back(c);
  }
  if (digits.size() % 2 != 0) {
    throw CodecError("hex string has odd length " + std::to_string(digits.size()));
  }
  Octets out(digits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(digits[2 * i]) << 4 | nibble(digits[2 * i + 1]));
  }
  return out;
}

}  // namespace e2dev
