#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "e2dev/common/hex.hpp"

namespace e2dev::per {

// Number of bits used for a constrained integer in [lb, ub]:
// ceil(log2(ub - lb + 1)), zero for a singleton range.
unsigned constrained_width(std::uint64_t lb, std::uint64_t ub);

/// Unaligned, MSB-first bit buffer.
///
/// Encode mode appends bits at the end; decode mode reads from `cursor()`.
/// A buffer built with `from_octets` starts in decode mode with
/// `bit_len() == 8 * octets.size()` unless an explicit bit length is given.
/// All integers are big-endian. Padding bits added by `finalize` are zero.
class BitBuffer {
 public:
  BitBuffer() = default;

  static BitBuffer from_octets(std::span<const std::uint8_t> octets);
  static BitBuffer from_octets(std::span<const std::uint8_t> octets, std::size_t bit_len);

  // --- encode -------------------------------------------------------------

  void append_bits(std::uint64_t value, unsigned width);
  void append_bool(bool v) { append_bits(v ? 1 : 0, 1); }
  void append_constrained_uint(std::uint64_t value, std::uint64_t lb, std::uint64_t ub,
                               std::string_view field = "value");
  void append_fixed_uint64(std::uint64_t value) { append_bits(value, 64); }
  void append_real(double value);
  void append_chars(std::string_view s, std::size_t min_len, std::size_t max_len,
                    std::string_view field = "string");
  void append_octets(std::span<const std::uint8_t> bytes, std::size_t min_len,
                     std::size_t max_len, std::string_view field = "octets");

  // Pads to the next octet boundary with zero bits and returns the octets.
  // bit_len() keeps the unpadded length.
  Octets finalize() const;

  // --- decode -------------------------------------------------------------

  std::uint64_t read_bits(unsigned width);
  bool read_bool() { return read_bits(1) != 0; }
  std::uint64_t read_constrained_uint(std::uint64_t lb, std::uint64_t ub,
                                      std::string_view field = "value");
  std::uint64_t read_fixed_uint64() { return read_bits(64); }
  double read_real();
  std::string read_chars(std::size_t min_len, std::size_t max_len,
                         std::string_view field = "string");
  Octets read_octets(std::size_t min_len, std::size_t max_len, std::string_view field = "octets");

  // Strict end-of-message check for a decoder that consumed a whole
  // finalized buffer: fewer than 8 bits may remain and all must be zero.
  void expect_end(std::string_view what) const;

  std::size_t bit_len() const { return bit_len_; }
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return bit_len_ - cursor_; }

 private:
  bool bit_at(std::size_t pos) const;

  std::vector<std::uint8_t> bytes_;
  std::size_t bit_len_ = 0;
  std::size_t cursor_ = 0;
};

}  // namespace e2dev::per
