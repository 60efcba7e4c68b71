#include <gtest/gtest.h>

#include <fstream>
#include <functional>

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/framing.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/e2ap/subscription_fsm.hpp"
#include "generators.hpp"

using namespace e2dev;
using namespace e2dev::e2ap;

namespace {

std::vector<std::string> golden_lines() {
  std::ifstream in(std::string(E2DEV_SOURCE_DIR) + "/tests/data/golden_frames.hex");
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Expected decoding of each golden line, in file order.
std::vector<Message> golden_messages() {
  return {
      RicSubscriptionDeleteResponse{{1, 1}},
      RicSubscriptionDeleteRequest{{0x1234, 7}},
      RicControlAcknowledge{{2, 3}},
      ErrorIndication{Cause::node_overload},
      E2SetupFailure{Cause::unknown_metric},
      RicSubscriptionFailure{{1, 2}, Cause::node_unavailable},
      RicIndication{{1, 1}, 0, 5, Octets{0xAA}, Octets{}},
      RicSubscriptionResponse{{1, 1}, {0}, {}},
  };
}

}  // namespace

TEST(Frame, SubDelRespAnchor) {
  const auto f = frame(RicSubscriptionDeleteResponse{{1, 1}});
  EXPECT_EQ(f.size(), 9u);
  EXPECT_EQ(to_hex(f), "000000050900010001");
}

TEST(Frame, GoldenFixturesBothDirections) {
  const auto lines = golden_lines();
  const auto expected = golden_messages();
  ASSERT_EQ(lines.size(), expected.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    SCOPED_TRACE(lines[i]);
    const auto bytes = from_hex(lines[i]);
    const auto p = parse(bytes);
    EXPECT_EQ(p.consumed, bytes.size());
    EXPECT_EQ(p.message, expected[i]);
    EXPECT_EQ(to_hex(frame(expected[i])), lines[i]);
  }
}

TEST(Frame, TypeCodesFollowDeclarationOrder) {
  EXPECT_EQ(type_code(E2SetupRequest{}), 1);
  EXPECT_EQ(type_code(RicSubscriptionRequest{}), 4);
  EXPECT_EQ(type_code(RicIndication{}), 7);
  EXPECT_EQ(type_code(ErrorIndication{}), 12);
}

TEST(Parse, UnknownTypeIsProtocolError) {
  EXPECT_THROW(parse(from_hex("000000026300")), ProtocolError);
  EXPECT_THROW(parse(from_hex("000000010D")), ProtocolError);
}

TEST(Parse, ShortInputIsTruncation) {
  EXPECT_THROW(parse(from_hex("0000000509000100")), TruncationError);
  EXPECT_THROW(parse(from_hex("000000")), TruncationError);
  // Declared length shorter than the payload needs.
  EXPECT_THROW(parse(from_hex("0000000309000100")), CodecError);
}

TEST(Parse, LeavesTrailingBytesAlone) {
  auto bytes = from_hex("000000050900010001");
  bytes.push_back(0x42);
  bytes.push_back(0x43);
  const auto p = parse(bytes);
  EXPECT_EQ(p.consumed, 9u);
  EXPECT_EQ(p.message, Message(RicSubscriptionDeleteResponse{{1, 1}}));
}

TEST(Parse, ZeroAndOversizedLengthsRejected) {
  EXPECT_THROW(try_split_frame(from_hex("0000000009")), FrameError);
  EXPECT_THROW(try_split_frame(from_hex("0100000109")), FrameError);
  EXPECT_FALSE(try_split_frame(from_hex("00000005090001")).has_value());
}

TEST(Frame, OversizePayloadRejected) {
  RicIndication m{{1, 1}, 0, 0, Octets(kMaxOctetString + 1), {}};
  EXPECT_THROW(frame(m), Error);
}

TEST(Frame, RandomRoundTripEveryKind) {
  testgen::Rng rng(77);
  for (std::size_t kind = 0; kind < testgen::kE2apKinds; ++kind) {
    for (int i = 0; i < 200; ++i) {
      const auto m = testgen::e2ap_message(rng, kind);
      ASSERT_EQ(m.index(), kind);
      const auto f = frame(m);
      const auto p = parse(f);
      ASSERT_EQ(p.message, m);
      ASSERT_EQ(p.consumed, f.size());
      ASSERT_EQ(frame(p.message), f);
    }
  }
}

TEST(Parse, FuzzedBytesNeverCrash) {
  testgen::Rng rng(13);
  for (int i = 0; i < 20000; ++i) {
    Octets bytes;
    if (testgen::coin(rng)) {
      // Mutate a valid frame.
      bytes = frame(testgen::e2ap_message(rng, testgen::uniform(rng, 0, testgen::kE2apKinds - 1)));
      const auto flips = testgen::uniform(rng, 1, 4);
      for (std::uint64_t k = 0; k < flips; ++k) {
        bytes[testgen::uniform(rng, 0, bytes.size() - 1)] ^= static_cast<std::uint8_t>(1u << testgen::uniform(rng, 0, 7));
      }
    } else {
      bytes = testgen::octets(rng, 0, 40);
    }
    try {
      parse(bytes);
    } catch (const Error&) {
      // typed rejection is fine; anything else escapes and fails the test
    }
  }
}

TEST(Fsm, TableRows) {
  using S = SubscriptionState;
  using E = SubscriptionEvent;
  using A = FsmAction;
  auto t = subscription_transition(S::Idle, E::SendSubReq);
  EXPECT_EQ(t.next, S::Pending);
  EXPECT_EQ(t.actions, std::vector<A>{A::EmitSubscriptionRequest});

  t = subscription_transition(S::Closed, E::RecvIndication);
  EXPECT_EQ(t.next, S::Closed);
  EXPECT_EQ(t.actions, std::vector<A>{A::ProtocolViolation});

  EXPECT_EQ(subscription_transition(S::Pending, E::RecvSubRespAdmitted).next, S::Active);
  EXPECT_EQ(subscription_transition(S::Pending, E::RecvSubFail).next, S::Closed);
  EXPECT_EQ(subscription_transition(S::Pending, E::RecvSubRespNoneAdmitted).next, S::Closed);
  EXPECT_EQ(subscription_transition(S::Active, E::RecvIndication).actions, std::vector<A>{A::Deliver});
  EXPECT_EQ(subscription_transition(S::Active, E::SendDelReq).next, S::Deleting);
  EXPECT_EQ(subscription_transition(S::Deleting, E::RecvIndication).actions, std::vector<A>{A::Deliver});
  EXPECT_EQ(subscription_transition(S::Deleting, E::RecvDelResp).next, S::Closed);
  for (auto s : {S::Idle, S::Pending, S::Active, S::Deleting}) {
    EXPECT_EQ(subscription_transition(s, E::PeerDisconnect).next, S::Closed);
  }
  // Off-table pairs keep the state.
  t = subscription_transition(S::Idle, E::RecvIndication);
  EXPECT_EQ(t.next, S::Idle);
  EXPECT_EQ(t.actions, std::vector<A>{A::ProtocolViolation});
  t = subscription_transition(S::Active, E::SendSubReq);
  EXPECT_EQ(t.next, S::Active);
  EXPECT_EQ(t.actions, std::vector<A>{A::ProtocolViolation});
}

TEST(Fsm, ExhaustiveSafetyToDepthSix) {
  using S = SubscriptionState;
  using E = SubscriptionEvent;
  std::size_t sequences = 0;
  std::function<void(SubscriptionFsm, std::vector<S>, int)> walk = [&](SubscriptionFsm fsm, std::vector<S> path,
                                                                       int depth) {
    ++sequences;
    if (depth == 6) return;
    for (auto e : kAllSubscriptionEvents) {
      auto next = fsm;
      const auto before = next.state();
      const auto t = next.apply(e);
      const bool delivered =
          std::find(t.actions.begin(), t.actions.end(), FsmAction::Deliver) != t.actions.end();
      if (delivered) {
        ASSERT_TRUE(before == S::Active || before == S::Deleting) << to_string(before);
      }
      if (before == S::Closed) ASSERT_EQ(next.state(), S::Closed);
      if (next.state() == S::Active && before != S::Active) {
        ASSERT_EQ(before, S::Pending);
        ASSERT_EQ(e, E::RecvSubRespAdmitted);
      }
      auto p = path;
      p.push_back(next.state());
      // Active only ever follows a Pending somewhere earlier on the path.
      if (next.state() == S::Active) {
        ASSERT_NE(std::find(path.begin(), path.end(), S::Pending), path.end());
      }
      walk(next, std::move(p), depth + 1);
    }
  };
  walk(SubscriptionFsm{}, {S::Idle}, 0);
  // 8^0 + ... + 8^6
  EXPECT_EQ(sequences, 299593u);
}

TEST(SequenceTracker, Examples) {
  SequenceTracker fresh;
  EXPECT_EQ(fresh.validate(0), SnVerdict::ok);

  SequenceTracker t;
  for (std::uint32_t sn = 0; sn <= 4; ++sn) ASSERT_EQ(t.validate(sn), SnVerdict::ok);
  EXPECT_EQ(t.validate(4), SnVerdict::duplicate);
  EXPECT_EQ(t.validate(6), SnVerdict::gap);
  EXPECT_EQ(t.last(), 4u);  // gap does not advance
  EXPECT_EQ(t.validate(2), SnVerdict::duplicate);
  EXPECT_EQ(t.validate(5), SnVerdict::ok);

  SequenceTracker late;
  EXPECT_EQ(late.validate(3), SnVerdict::gap);
  EXPECT_FALSE(late.last().has_value());
}

TEST(SequenceTracker, AcceptedNumbersAreContiguous) {
  testgen::Rng rng(3);
  SequenceTracker t;
  std::vector<std::uint32_t> accepted;
  for (int i = 0; i < 5000; ++i) {
    const auto base = t.last() ? *t.last() : 0u;
    const auto sn = static_cast<std::uint32_t>(base + testgen::uniform(rng, 0, 3));
    if (t.validate(sn) == SnVerdict::ok) accepted.push_back(sn);
  }
  for (std::size_t i = 0; i < accepted.size(); ++i) ASSERT_EQ(accepted[i], i);
}

TEST(Plmn, DigitLayout) {
  const auto p = Plmn::from_hex("00F110");
  EXPECT_EQ(p.mcc(), "001");
  EXPECT_EQ(p.mnc(), "01");
  EXPECT_TRUE(p.valid());
  EXPECT_EQ(p.hex(), "00F110");
  EXPECT_THROW(Plmn::from_hex("0AF110"), CodecError);
  EXPECT_THROW(Plmn::from_hex("00F1F0"), CodecError);  // filler outside MNC digit 3
  EXPECT_FALSE((Plmn{{0x00, 0xF1, 0x1F}}).valid());
}
