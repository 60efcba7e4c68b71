#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "e2dev/common/error.hpp"
#include "e2dev/common/hex.hpp"
#include "e2dev/per/bit_buffer.hpp"

using namespace e2dev;
using per::BitBuffer;

TEST(ConstrainedWidth, MatchesCeilLog2OfRange) {
  EXPECT_EQ(per::constrained_width(7, 7), 0u);
  EXPECT_EQ(per::constrained_width(0, 1), 1u);
  EXPECT_EQ(per::constrained_width(0, 4), 3u);
  EXPECT_EQ(per::constrained_width(1, 150), 8u);
  EXPECT_EQ(per::constrained_width(0, 150), 8u);
  EXPECT_EQ(per::constrained_width(1, 65536), 16u);
  EXPECT_EQ(per::constrained_width(0, 65536), 17u);
  EXPECT_EQ(per::constrained_width(0, std::numeric_limits<std::uint64_t>::max()), 64u);
}

TEST(ConstrainedUint, PeriodThousandIsOffsetByLowerBound) {
  BitBuffer b;
  b.append_constrained_uint(1000, 1, 65536);
  EXPECT_EQ(b.bit_len(), 16u);
  EXPECT_EQ(to_hex(b.finalize()), "03E7");

  auto r = BitBuffer::from_octets(from_hex("03E7"));
  EXPECT_EQ(r.read_constrained_uint(1, 65536), 1000u);
  EXPECT_EQ(r.cursor(), 16u);
}

TEST(ConstrainedUint, SingletonRangeUsesNoBits) {
  BitBuffer b;
  b.append_constrained_uint(7, 7, 7);
  EXPECT_EQ(b.bit_len(), 0u);

  BitBuffer empty;
  EXPECT_EQ(empty.read_constrained_uint(5, 5), 5u);
  EXPECT_EQ(empty.cursor(), 0u);
}

TEST(ConstrainedUint, ThreeInZeroToFourIsThreeBits) {
  BitBuffer b;
  b.append_constrained_uint(3, 0, 4);
  EXPECT_EQ(b.bit_len(), 3u);
  EXPECT_EQ(b.finalize(), Octets{0x60});  // 011 + 00000 padding
}

TEST(ConstrainedUint, OutOfRangeNamesFieldValueAndBounds) {
  BitBuffer b;
  try {
    b.append_constrained_uint(0, 1, 65536, "reporting_period_ms");
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("reporting_period_ms"), std::string::npos) << msg;
    EXPECT_NE(msg.find("0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("65536"), std::string::npos) << msg;
  }
  EXPECT_EQ(b.bit_len(), 0u);
}

TEST(ConstrainedUint, TruncationReportsExpectedAndRemaining) {
  auto r = BitBuffer::from_octets(from_hex("03"));
  try {
    r.read_constrained_uint(1, 65536, "reporting_period_ms");
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("16"), std::string::npos) << msg;
    EXPECT_NE(msg.find("8"), std::string::npos) << msg;
  }
}

TEST(ConstrainedUint, OffsetBeyondRangeIsMalformed) {
  // 3 bits can hold 5..7, which are outside [0, 4].
  auto r = BitBuffer::from_octets(Octets{0xE0});
  EXPECT_THROW(r.read_constrained_uint(0, 4), MalformedError);
}

TEST(ConstrainedUint, RandomTriplesRoundTripAndObeyWidthLaw) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t lb = rng() >> (rng() % 64);
    const std::uint64_t span = std::min(rng() >> (rng() % 64), std::numeric_limits<std::uint64_t>::max() - lb);
    const std::uint64_t ub = lb + span;
    const std::uint64_t v = lb + (span == std::numeric_limits<std::uint64_t>::max() ? rng() : rng() % (span + 1));
    BitBuffer b;
    b.append_bits(1, 1);  // misalign on purpose
    b.append_constrained_uint(v, lb, ub);
    const auto bytes = b.finalize();
    auto r = BitBuffer::from_octets(bytes, b.bit_len());
    r.read_bits(1);
    const auto before = r.cursor();
    ASSERT_EQ(r.read_constrained_uint(lb, ub), v) << lb << ".." << ub;
    ASSERT_EQ(r.cursor() - before, per::constrained_width(lb, ub));
  }
}

TEST(FixedUint64, ZeroAndOne) {
  BitBuffer z;
  z.append_fixed_uint64(0);
  EXPECT_EQ(z.finalize(), Octets(8, 0));
  BitBuffer one;
  one.append_fixed_uint64(1);
  EXPECT_EQ(to_hex(one.finalize()), "0000000000000001");
}

TEST(FixedUint64, RandomRoundTrip) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng();
    BitBuffer b;
    b.append_bits(0, 3);
    b.append_fixed_uint64(v);
    auto r = BitBuffer::from_octets(b.finalize(), b.bit_len());
    r.read_bits(3);
    ASSERT_EQ(r.read_fixed_uint64(), v);
  }
}

TEST(Real, BitPatternsSurvive) {
  std::mt19937_64 rng(3);
  const double specials[] = {0.0, -0.0, 1.5, std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::denorm_min()};
  std::vector<double> values(std::begin(specials), std::end(specials));
  for (int i = 0; i < 500; ++i) values.push_back(std::bit_cast<double>(rng()));
  for (double v : values) {
    BitBuffer b;
    b.append_real(v);
    EXPECT_EQ(b.bit_len(), 64u);
    auto r = BitBuffer::from_octets(b.finalize());
    ASSERT_EQ(std::bit_cast<std::uint64_t>(r.read_real()), std::bit_cast<std::uint64_t>(v));
  }
}

TEST(Chars, MetricNameLayout) {
  BitBuffer b;
  b.append_chars("DRB.UEThpDl", 1, 150);
  EXPECT_EQ(b.bit_len(), 8u + 88u);
  const auto bytes = b.finalize();
  EXPECT_EQ(bytes[0], 10);  // length 11 stored as 11 - 1
  EXPECT_EQ(std::string(bytes.begin() + 1, bytes.end()), "DRB.UEThpDl");
  auto r = BitBuffer::from_octets(bytes);
  EXPECT_EQ(r.read_chars(1, 150), "DRB.UEThpDl");
}

TEST(Chars, EmptyFixedRangeIsNothing) {
  BitBuffer b;
  b.append_chars("", 0, 0);
  EXPECT_EQ(b.bit_len(), 0u);
}

TEST(Chars, LengthOutOfBounds) {
  BitBuffer b;
  EXPECT_THROW(b.append_chars("", 1, 150), RangeError);
  EXPECT_THROW(b.append_chars(std::string(151, 'x'), 1, 150), RangeError);
}

TEST(Chars, RandomPrintableRoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    std::string s(rng() % 151, ' ');
    for (auto& c : s) c = static_cast<char>(' ' + rng() % 95);
    BitBuffer b;
    b.append_bool(true);
    b.append_chars(s, 0, 150);
    auto r = BitBuffer::from_octets(b.finalize(), b.bit_len());
    ASSERT_TRUE(r.read_bool());
    ASSERT_EQ(r.read_chars(0, 150), s);
  }
}

TEST(Octets, RoundTripAndBounds) {
  BitBuffer b;
  b.append_octets(Octets{1, 2, 3}, 0, 10);
  EXPECT_THROW(b.append_octets(Octets(11, 0), 0, 10), RangeError);
  auto r = BitBuffer::from_octets(b.finalize(), b.bit_len());
  EXPECT_EQ(r.read_octets(0, 10), (Octets{1, 2, 3}));
}

TEST(Finalize, PadsWithZeros) {
  BitBuffer b;
  b.append_bits(0b101, 3);
  EXPECT_EQ(b.finalize(), Octets{0xA0});
  EXPECT_EQ(b.bit_len(), 3u);
  EXPECT_TRUE(BitBuffer().finalize().empty());
}

TEST(Finalize, PaddingPropertyOverRandomContent) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    BitBuffer b;
    for (int n = rng() % 20; n > 0; --n) {
      const auto w = static_cast<unsigned>(rng() % 65);
      b.append_bits(w == 64 ? rng() : rng() & ((std::uint64_t{1} << w) - 1), w);
    }
    const auto bytes = b.finalize();
    ASSERT_LT(8 * bytes.size() - b.bit_len(), 8u);
    const auto pad = 8 * bytes.size() - b.bit_len();
    if (pad > 0) ASSERT_EQ(bytes.back() & ((1u << pad) - 1), 0u);
  }
}

TEST(ExpectEnd, RejectsTrailingOctetsAndNonZeroPadding) {
  auto ok = BitBuffer::from_octets(Octets{0xA0});
  ok.read_bits(3);
  EXPECT_NO_THROW(ok.expect_end("test"));

  auto dirty = BitBuffer::from_octets(Octets{0xA1});
  dirty.read_bits(3);
  EXPECT_THROW(dirty.expect_end("test"), MalformedError);

  auto trailing = BitBuffer::from_octets(Octets{0xA0, 0x00});
  trailing.read_bits(3);
  EXPECT_THROW(trailing.expect_end("test"), MalformedError);
}

TEST(Hex, UppercaseAndStrictParsing) {
  EXPECT_EQ(to_hex(Octets{0x03, 0xE7}), "03E7");
  EXPECT_EQ(from_hex("03e7"), (Octets{0x03, 0xE7}));
  EXPECT_EQ(from_hex("03 E7\n"), (Octets{0x03, 0xE7}));
  EXPECT_THROW(from_hex("03E"), CodecError);
  EXPECT_THROW(from_hex("0G"), CodecError);
}
