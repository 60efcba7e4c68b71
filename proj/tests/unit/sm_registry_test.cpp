#include <gtest/gtest.h>

#include <thread>

#include "e2dev/common/error.hpp"
#include "e2dev/kpm/codec.hpp"
#include "e2dev/sm/registry.hpp"

using namespace e2dev;
using namespace e2dev::sm;

TEST(Registry, RegisterThenResolve) {
  Registry r;
  auto codec = make_kpm_codec("3.00");
  r.register_codec({"KPM", "3.00"}, codec);
  EXPECT_EQ(r.resolve({"KPM", "3.00"}), codec);
  EXPECT_EQ(r.resolve({"KPM", "2.03"}), nullptr);
}

TEST(Registry, DuplicateKeyConflicts) {
  Registry r;
  r.register_codec({"KPM", "3.00"}, make_kpm_codec("3.00"));
  EXPECT_THROW(r.register_codec({"KPM", "3.00"}, make_kpm_codec("3.00")), ValidationError);
}

TEST(Registry, VersionsResolveIndependently) {
  Registry r;
  auto v2 = make_kpm_codec("2.03");
  auto v3 = make_kpm_codec("3.00");
  r.register_codec({"KPM", "2.03"}, v2);
  r.register_codec({"KPM", "3.00"}, v3);
  EXPECT_EQ(r.resolve({"KPM", "2.03"}), v2);
  EXPECT_EQ(r.resolve({"KPM", "3.00"}), v3);
  EXPECT_EQ(r.keys(), (std::vector<SmCodecKey>{{"KPM", "2.03"}, {"KPM", "3.00"}}));
  EXPECT_EQ(v2->key().str(), "KPM/2.03");
}

TEST(Registry, ResolveForFunction) {
  Registry r;
  register_default_codecs(r);
  const FunctionBindings b{{147, {"KPM", "3.00"}}, {5, {"RC", "1.03"}}};
  EXPECT_EQ(r.resolve_for_function(b, 147)->key(), (SmCodecKey{"KPM", "3.00"}));
  EXPECT_TRUE(r.resolve_for_function(b, 9)->is_fallback());  // unbound
  EXPECT_TRUE(r.resolve_for_function(b, 5)->is_fallback());  // bound, not registered
}

TEST(Registry, UnregisterFlipsOnlyThatKey) {
  Registry r;
  register_default_codecs(r);
  r.register_codec({"KPM", "2.03"}, make_kpm_codec("2.03"));
  const FunctionBindings b{{2, {"KPM", "3.00"}}, {3, {"KPM", "2.03"}}};
  EXPECT_TRUE(r.unregister({"KPM", "3.00"}));
  EXPECT_FALSE(r.unregister({"KPM", "3.00"}));
  EXPECT_TRUE(r.resolve_for_function(b, 2)->is_fallback());
  EXPECT_FALSE(r.resolve_for_function(b, 3)->is_fallback());
  // Swapping a version back in restores resolution.
  r.register_codec({"KPM", "3.00"}, make_kpm_codec("3.00"));
  EXPECT_FALSE(r.resolve_for_function(b, 2)->is_fallback());
}

TEST(OpaqueFallback, PreservesBytes) {
  const auto& fb = opaque_fallback();
  const Octets payload{0xDE, 0xAD, 0x00, 0xBE, 0xEF};
  const auto m = fb->decode_indication_message(payload);
  ASSERT_TRUE(is_opaque(m));
  EXPECT_EQ(std::get<Opaque>(m).octets, payload);
  EXPECT_EQ(std::get<Opaque>(fb->decode_indication_header(payload)).octets, payload);
  EXPECT_EQ(std::get<Opaque>(fb->decode_function_definition(payload)).octets, payload);
  EXPECT_EQ(std::get<Opaque>(fb->summary(payload)).octets, payload);
  EXPECT_THROW(fb->encode_event_trigger({1000}), CodecError);
}

TEST(KpmCodec, DecodesThroughInterface) {
  auto codec = make_kpm_codec();
  const auto def = kpm::reference_function_definition();
  const auto octets = kpm::encode_ran_function_definition(def);
  EXPECT_EQ(std::get<kpm::RanFunctionDefinition>(codec->decode_function_definition(octets)), def);
  EXPECT_EQ(std::get<kpm::FunctionSummary>(codec->summary(octets)), kpm::function_definition_summary(def));
  EXPECT_EQ(to_hex(codec->encode_event_trigger({1000})), "03E7");
  EXPECT_THROW(codec->decode_indication_message(Octets{0xFF}), CodecError);
}

TEST(Registry, ConcurrentResolution) {
  Registry r;
  register_default_codecs(r);
  const FunctionBindings b{{2, {"KPM", "3.00"}}};
  std::vector<std::thread> ts;
  std::atomic<int> hits{0};
  for (int t = 0; t < 4; ++t) {
    ts.emplace_back([&] {
      for (int i = 0; i < 2000; ++i) {
        if (!r.resolve_for_function(b, 2)->is_fallback()) ++hits;
      }
    });
  }
  for (auto& t : ts) t.join();
  EXPECT_EQ(hits.load(), 8000);
}
