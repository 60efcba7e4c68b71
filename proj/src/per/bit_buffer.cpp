#include "e2dev/per/bit_buffer.hpp"

#include <bit>
#include <cstring>
#include <limits>

#include "e2dev/common/error.hpp"

namespace e2dev::per {

namespace {

std::string range_message(std::string_view field, std::uint64_t value, std::uint64_t lb,
                          std::uint64_t ub) {
  return std::string(field) + " = " + std::to_string(value) + " outside [" + std::to_string(lb) +
         ", " + std::to_string(ub) + "]";
}

}  // namespace

unsigned constrained_width(std::uint64_t lb, std::uint64_t ub) {
  if (ub < lb) throw RangeError("empty range [" + std::to_string(lb) + ", " + std::to_string(ub) + "]");
  return static_cast<unsigned>(std::bit_width(ub - lb));
}

BitBuffer BitBuffer::from_octets(std::span<const std::uint8_t> octets) {
  return from_octets(octets, octets.size() * 8);
}

BitBuffer BitBuffer::from_octets(std::span<const std::uint8_t> octets, std::size_t bit_len) {
  if (bit_len > octets.size() * 8) {
    throw TruncationError("bit length " + std::to_string(bit_len) + " exceeds " +
                          std::to_string(octets.size()) + " octets");
  }
  BitBuffer b;
  b.bytes_.assign(octets.begin(), octets.end());
  b.bit_len_ = bit_len;
  return b;
}

void BitBuffer::append_bits(std::uint64_t value, unsigned width) {
  if (width == 0) return;
  if (width < 64 && (value >> width) != 0) {
    throw RangeError("value " + std::to_string(value) + " does not fit in " +
                     std::to_string(width) + " bits");
  }
  for (unsigned i = width; i-- > 0;) {
    const std::size_t pos = bit_len_;
    if (pos % 8 == 0) bytes_.push_back(0);
    if ((value >> i) & 1U) bytes_[pos / 8] |= static_cast<std::uint8_t>(0x80U >> (pos % 8));
    ++bit_len_;
  }
}

void BitBuffer::append_constrained_uint(std::uint64_t value, std::uint64_t lb, std::uint64_t ub,
                                        std::string_view field) {
  if (value < lb || value > ub) throw RangeError(range_message(field, value, lb, ub));
  append_bits(value - lb, constrained_width(lb, ub));
}

void BitBuffer::append_real(double value) { append_bits(std::bit_cast<std::uint64_t>(value), 64); }

void BitBuffer::append_chars(std::string_view s, std::size_t min_len, std::size_t max_len,
                             std::string_view field) {
  if (s.size() < min_len || s.size() > max_len) {
    throw RangeError(range_message(std::string(field) + " length", s.size(), min_len, max_len));
  }
  append_constrained_uint(s.size(), min_len, max_len, field);
  for (char c : s) append_bits(static_cast<unsigned char>(c), 8);
}

void BitBuffer::append_octets(std::span<const std::uint8_t> bytes, std::size_t min_len,
                              std::size_t max_len, std::string_view field) {
  if (bytes.size() < min_len || bytes.size() > max_len) {
    throw RangeError(range_message(std::string(field) + " length", bytes.size(), min_len, max_len));
  }
  append_constrained_uint(bytes.size(), min_len, max_len, field);
  if (bit_len_ % 8 == 0) {
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
    bit_len_ += bytes.size() * 8;
    return;
  }
  for (auto b : bytes) append_bits(b, 8);
}

Octets BitBuffer::finalize() const {
  Octets out(bytes_.begin(), bytes_.begin() + static_cast<std::ptrdiff_t>((bit_len_ + 7) / 8));
  if (bit_len_ % 8 != 0) {
    out.back() &= static_cast<std::uint8_t>(0xFF00U >> (bit_len_ % 8));
  }
  return out;
}

bool BitBuffer::bit_at(std::size_t pos) const {
  return (bytes_[pos / 8] >> (7 - pos % 8)) & 1U;
}

std::uint64_t BitBuffer::read_bits(unsigned width) {
  if (width > 64) throw RangeError("cannot read " + std::to_string(width) + " bits at once");
  if (remaining() < width) {
    throw TruncationError("truncated: expected " + std::to_string(width) + " bits, " +
                          std::to_string(remaining()) + " remaining");
  }
  std::uint64_t v = 0;
  if (cursor_ % 8 == 0 && width % 8 == 0) {
    for (unsigned i = 0; i < width / 8; ++i) v = v << 8 | bytes_[cursor_ / 8 + i];
    cursor_ += width;
    return v;
  }
  for (unsigned i = 0; i < width; ++i) v = v << 1 | (bit_at(cursor_++) ? 1U : 0U);
  return v;
}

std::uint64_t BitBuffer::read_constrained_uint(std::uint64_t lb, std::uint64_t ub,
                                               std::string_view field) {
  const unsigned width = constrained_width(lb, ub);
  if (remaining() < width) {
    throw TruncationError("truncated " + std::string(field) + ": expected " +
                          std::to_string(width) + " bits, " + std::to_string(remaining()) +
                          " remaining");
  }
  const std::uint64_t offset = read_bits(width);
  if (offset > ub - lb) {
    throw MalformedError(range_message(field, lb + offset, lb, ub));
  }
  return lb + offset;
}

double BitBuffer::read_real() { return std::bit_cast<double>(read_bits(64)); }

std::string BitBuffer::read_chars(std::size_t min_len, std::size_t max_len, std::string_view field) {
  const auto n = read_constrained_uint(min_len, max_len, std::string(field) + " length");
  if (remaining() / 8 < n) {
    throw TruncationError("truncated " + std::string(field) + ": expected " +
                          std::to_string(n * 8) + " bits, " + std::to_string(remaining()) +
                          " remaining");
  }
  std::string s(n, '\0');
  for (auto& c : s) c = static_cast<char>(read_bits(8));
  return s;
}

Octets BitBuffer::read_octets(std::size_t min_len, std::size_t max_len, std::string_view field) {
  const auto n = read_constrained_uint(min_len, max_len, std::string(field) + " length");
  if (remaining() / 8 < n) {
    throw TruncationError("truncated " + std::string(field) + ": expected " +
                          std::to_string(n * 8) + " bits, " + std::to_string(remaining()) +
                          " remaining");
  }
  Octets out(n);
  if (cursor_ % 8 == 0) {
    std::memcpy(out.data(), bytes_.data() + cursor_ / 8, n);
    cursor_ += n * 8;
    return out;
  }
  for (auto& b : out) b = static_cast<std::uint8_t>(read_bits(8));
  return out;
}

void BitBuffer::expect_end(std::string_view what) const {
  const std::size_t left = remaining();
  if (left >= 8) {
    throw MalformedError(std::string(what) + ": " + std::to_string(left / 8) + " trailing octets");
  }
  for (std::size_t p = cursor_; p < bit_len_; ++p) {
    if (bit_at(p)) throw MalformedError(std::string(what) + ": non-zero padding bit");
  }
}

}  // namespace e2dev::per
