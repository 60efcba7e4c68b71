#include <gtest/gtest.h>

#include <atomic>
#include <future>

#include "e2dev/common/error.hpp"
#include "e2dev/kpm/codec.hpp"
#include "generators.hpp"
#include "harness.hpp"

using namespace e2dev;
using namespace e2dev::testgen;
using xapp::DecodedIndication;
using xapp::DecodeStatus;
using xapp::XappContext;

namespace {

const std::vector<std::string> kSelected = {"DRB.PdcpSduVolumeDL", "DRB.PdcpSduVolumeUL", "DRB.UEThpDl",
                                            "DRB.UEThpUl",         "RRU.PrbTotDl",        "RRU.PrbTotUl"};

void drive(const Testbed& tb, node::NodeSim& node, std::uint64_t until_ms, std::uint64_t step = 1000) {
  for (std::uint64_t t = step; t <= until_ms; t += step) {
    node.advance_to(t);
    tb.settle();
  }
}

bool has_line(const Logger& log, const std::string& needle) {
  for (const auto& l : log.lines()) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Xapp, RegisterThenListNodes) {
  Testbed tb("x-list");
  auto x = XappContext::connect(tb.xapp_options("lister"));
  EXPECT_TRUE(x->list_nodes().empty());
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 1)));
  const auto nodes = x->list_nodes();
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_EQ(nodes[0].inventory_name, "gnb_001_001_00000e05");
  EXPECT_EQ(nodes[0].connection_status, "CONNECTED");
}

TEST(Xapp, DuplicateIdRejected) {
  Testbed tb("x-dup");
  auto first = XappContext::connect(tb.xapp_options("same"));
  EXPECT_THROW(XappContext::connect(tb.xapp_options("same")), xapp::RegistrationRejected);
  // The id frees up once the first one leaves.
  first->close();
  first.reset();
  std::unique_ptr<XappContext> again;
  for (int i = 0; i < 100 && !again; ++i) {
    try {
      again = XappContext::connect(tb.xapp_options("same"));
    } catch (const xapp::RegistrationRejected&) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  EXPECT_TRUE(again);
}

TEST(Xapp, DeadAddressIsTransportError) {
  auto opts = xapp::XappOptions{};
  opts.ric_endpoint = "inproc://no-ric-here";
  opts.xapp_id = "lonely";
  opts.retry_delay = std::chrono::milliseconds(1);
  EXPECT_THROW(XappContext::connect(opts), TransportError);
}

TEST(Xapp, AvailableFunctionsMatchNodeAndLogListingLines) {
  Testbed tb("x-funcs");
  auto cfg = tb.node_config(steady_trace({"ue1"}, 1));
  const Octets blob{0x01, 0x02, 0xFE};
  cfg.extra_functions.push_back({5, blob, 1});
  auto node = tb.start_node(std::move(cfg));
  auto x = XappContext::connect(tb.xapp_options("funcs"));
  const auto fns = x->available_functions(node->inventory_name());
  ASSERT_EQ(fns.size(), 2u);

  const auto& kpm_fn = fns.at(2);
  ASSERT_TRUE(kpm_fn.codec);
  EXPECT_EQ(kpm_fn.codec->str(), "KPM/3.00");
  EXPECT_EQ(kpm_fn.summary, kpm::function_definition_summary(kpm::reference_function_definition()));

  const auto& opaque = fns.at(5);
  EXPECT_FALSE(opaque.codec);
  EXPECT_EQ(opaque.definition_hex, "0102FE");

  EXPECT_TRUE(has_line(*tb.logger,
                       "Available functions: {0: [], 1: [], 2: [], 3: ['DRB.PdcpSduVolumeDL', 'DRB.PdcpSduVolumeUL', "
                       "'DRB.RlcSduDelayDl', 'DRB.UEThpDl', 'DRB.UEThpUl', 'RRU.PrbTotDl', 'RRU.PrbTotUl'], 4: []}"));

  x->subscribe(node->inventory_name(), 2, kSelected, 1000, 1000);
  EXPECT_TRUE(has_line(*tb.logger,
                       "Selected functions: {3: ['DRB.PdcpSduVolumeDL', 'DRB.PdcpSduVolumeUL', 'DRB.UEThpDl', "
                       "'DRB.UEThpUl', 'RRU.PrbTotDl', 'RRU.PrbTotUl']}"));
  EXPECT_TRUE(has_line(*tb.logger, "Preparing subscription for gnb: gnb_001_001_00000e05"));
  EXPECT_TRUE(has_line(*tb.logger, "event trigger encoded: 03E7"));
}

TEST(Xapp, LocalValidationSendsNothing) {
  Testbed tb("x-valid");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 1)));
  auto x = XappContext::connect(tb.xapp_options("strict"));
  const auto name = node->inventory_name();
  EXPECT_THROW(x->subscribe(name, 2, {"DRB.UEThpDl"}, 1000, 300), ValidationError);
  EXPECT_THROW(x->subscribe(name, 2, {}, 1000, 1000), ValidationError);
  EXPECT_THROW(x->subscribe(name, 2, {"DRB.UEThpDl"}, 0, 1), ValidationError);
  EXPECT_THROW(x->subscribe(name, 2, {"DRB.UEThpDl"}, 65537, 1), ValidationError);
  EXPECT_TRUE(tb.ric->subscriptions().empty());
}

TEST(Xapp, UnknownMetricRefused) {
  Testbed tb("x-metric");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 1)));
  auto x = XappContext::connect(tb.xapp_options("m"));
  try {
    x->subscribe(node->inventory_name(), 2, {"NoSuch.Metric"}, 1000, 1000);
    FAIL();
  } catch (const xapp::SubscriptionRefused& e) {
    EXPECT_EQ(e.cause(), e2ap::Cause::unknown_metric);
  }
}

TEST(Xapp, DecodedIndicationsEqualWhatTheNodeEncoded) {
  Testbed tb("x-fidelity");
  Rng rng(4);
  std::vector<node::TraceRow> rows;
  for (std::uint64_t t = 0; t < 20000; t += 500) {
    for (const char* ue : {"ue1", "ue2"}) {
      const auto pkts = uniform(rng, 0, 300);
      rows.push_back({t, 500, ue, pkts * 1400, pkts * 100, pkts, pkts / 3, uniform(rng, 0, 50), 1, 3.0});
    }
  }
  auto node = tb.start_node(tb.node_config(node::TrafficTrace(rows)));
  auto x = XappContext::connect(tb.xapp_options("fidelity"));
  std::vector<DecodedIndication> got;
  x->on_indication([&](const DecodedIndication& d) { got.push_back(d); });
  Runner running(*x);
  x->subscribe(node->inventory_name(), 2, kSelected, 1000, 500);
  tb.settle();
  drive(tb, *node, 20000);

  const auto sent = node->sent_indications();
  ASSERT_EQ(got.size(), 20u);
  ASSERT_EQ(sent.size(), 20u);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].sn, i);
    EXPECT_EQ(got[i].status, DecodeStatus::decoded);
    EXPECT_EQ(got[i].node, "gnb_001_001_00000e05");
    EXPECT_EQ(std::get<kpm::IndicationHeader>(got[i].header), sent[i].header);
    EXPECT_EQ(std::get<kpm::IndicationMessage>(got[i].message), sent[i].message);
  }
}

TEST(Xapp, CorruptedMessageIsMalformedAndLoopContinues) {
  Testbed tb("x-corrupt");
  auto cfg = tb.node_config(steady_trace({"ue1"}, 10));
  // Drop the last octet of one message so it can no longer decode.
  cfg.fault_injector = [](std::uint32_t sn, Octets& m) {
    if (sn == 3) m.pop_back();
  };
  auto node = tb.start_node(std::move(cfg));
  auto x = XappContext::connect(tb.xapp_options("corrupt"));
  std::vector<DecodedIndication> got;
  x->on_indication([&](const DecodedIndication& d) { got.push_back(d); });
  Runner running(*x);
  x->subscribe(node->inventory_name(), 2, {"DRB.UEThpDl"}, 1000, 1000);
  tb.settle();
  drive(tb, *node, 10000);
  ASSERT_EQ(got.size(), 10u);
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (i == 3) {
      EXPECT_EQ(got[i].status, DecodeStatus::malformed);
      EXPECT_FALSE(got[i].error.empty());
      EXPECT_EQ(from_hex(got[i].message_hex), std::get<sm::Opaque>(got[i].message).octets);
    } else {
      EXPECT_EQ(got[i].status, DecodeStatus::decoded) << i;
    }
  }
  EXPECT_EQ(x->stats().decode_failures, 1u);
}

TEST(Xapp, UnregisteredCodecDeliversOpaqueBytes) {
  Testbed tb("x-opaque");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 3)));
  auto x = XappContext::connect(tb.xapp_options("opaque"));
  std::vector<DecodedIndication> got;
  x->on_indication([&](const DecodedIndication& d) { got.push_back(d); });
  Runner running(*x);
  x->subscribe(node->inventory_name(), 2, {"DRB.UEThpDl"}, 1000, 1000);
  tb.settle();
  tb.registry->unregister({"KPM", "3.00"});
  drive(tb, *node, 3000);
  ASSERT_EQ(got.size(), 3u);
  const auto frames = node->sent_indications();
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].status, DecodeStatus::undecoded);
    EXPECT_EQ(std::get<sm::Opaque>(got[i].message).octets, kpm::encode_indication_message(frames[i].message));
    EXPECT_EQ(std::get<sm::Opaque>(got[i].header).octets, kpm::encode_indication_header(frames[i].header));
  }
  EXPECT_EQ(x->stats().undecoded, 3u);
}

TEST(Xapp, ControlOctetsRelayedVerbatim) {
  Testbed tb("x-control");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 1)));
  auto x = XappContext::connect(tb.xapp_options("ctl"));
  Rng rng(17);
  std::vector<std::pair<Octets, Octets>> sent;
  for (int i = 0; i < 20; ++i) {
    sent.emplace_back(octets(rng, 0, 32), octets(rng, 0, 256));
    ASSERT_TRUE(x->send_control(node->inventory_name(), 2, sent.back().first, sent.back().second));
  }
  ASSERT_TRUE(x->send_control(node->inventory_name(), 2, {}, {}));
  sent.emplace_back();
  tb.settle();
  const auto log = node->control_log();
  ASSERT_EQ(log.size(), sent.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(log[i].header, sent[i].first);
    EXPECT_EQ(log[i].message, sent[i].second);
  }

  node->disconnect();
  tb.settle();
  ASSERT_TRUE(tb.node_status_is("DISCONNECTED"));
  EXPECT_FALSE(x->send_control(node->inventory_name(), 2, Octets{1}, Octets{2}));
  EXPECT_FALSE(x->send_control("gnb_nobody", 2, Octets{1}, Octets{2}));
}

TEST(Xapp, LogicErrorDeletesSubscriptions) {
  Testbed tb("x-logic");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 5)));
  auto x = XappContext::connect(tb.xapp_options("faulty"));
  const auto name = node->inventory_name();
  const auto result = x->run([&](XappContext& ctx) {
    ctx.subscribe(name, 2, {"DRB.UEThpDl"}, 1000, 1000);
    ctx.subscribe(name, 2, {"RRU.PrbTotDl"}, 1000, 1000);
    throw std::runtime_error("boom");
  });
  EXPECT_TRUE(result.logic_failed);
  EXPECT_EQ(result.error, "boom");
  tb.settle();
  EXPECT_EQ(node->active_subscriptions(), 0u);
  EXPECT_TRUE(tb.ric->subscriptions().empty());
}

TEST(Xapp, LogicReturningKeepsDispatchingUntilStop) {
  Testbed tb("x-keep");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 5)));
  auto x = XappContext::connect(tb.xapp_options("keep"));
  std::atomic<int> n{0};
  x->on_indication([&](const DecodedIndication&) { ++n; });
  std::promise<void> subscribed;
  std::thread runner([&] {
    x->run([&](XappContext& ctx) {
      ctx.subscribe(node->inventory_name(), 2, {"DRB.UEThpDl"}, 1000, 1000);
      subscribed.set_value();
    });
  });
  subscribed.get_future().wait();
  tb.settle();
  drive(tb, *node, 5000);
  EXPECT_EQ(n.load(), 5);
  x->stop();
  runner.join();
}

TEST(Xapp, CallbacksNeverOverlap) {
  Testbed tb("x-serial");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1", "ue2"}, 10)));
  auto x = XappContext::connect(tb.xapp_options("serial"));
  std::atomic<bool> inside{false};
  std::atomic<int> overlaps{0}, calls{0};
  std::map<e2ap::RicRequestId, std::vector<std::uint32_t>> order;
  auto guard = [&] {
    if (inside.exchange(true)) ++overlaps;
    std::this_thread::sleep_for(std::chrono::microseconds(200));
    inside = false;
    ++calls;
  };
  x->on_indication([&](const DecodedIndication& d) {
    guard();
    order[d.request_id].push_back(d.sn);
  });
  x->on_subscription_end([&](const xapp::SubscriptionEnd&) { guard(); });
  Runner running(*x);
  for (int i = 0; i < 4; ++i) x->subscribe(node->inventory_name(), 2, {"DRB.UEThpDl"}, 500 * (i + 1), 500);
  tb.settle();
  drive(tb, *node, 10000, 500);
  node->disconnect();
  tb.settle();
  EXPECT_EQ(overlaps.load(), 0);
  EXPECT_GT(calls.load(), 20);
  for (const auto& [rid, sns] : order) {
    for (std::size_t i = 0; i < sns.size(); ++i) EXPECT_EQ(sns[i], i);
  }
}

namespace {

class CountingXapp : public xapp::XappBase {
 public:
  using XappBase::XappBase;
  std::string node;
  std::promise<void> ready;
  std::atomic<int> seen{0};

 protected:
  void logic(XappContext& ctx) override {
    ctx.subscribe(node, 2, {"DRB.PdcpSduVolumeDL"}, 1000, 1000);
    ready.set_value();
  }
  void handle_indication(const DecodedIndication& d) override {
    if (d.status == DecodeStatus::decoded) ++seen;
  }
};

}  // namespace

TEST(XappBase, ExtensionStyle) {
  Testbed tb("x-base");
  auto node = tb.start_node(tb.node_config(steady_trace({"ue1"}, 4)));
  CountingXapp app(tb.xapp_options("derived"));
  app.node = node->inventory_name();
  app.connect();
  std::thread runner([&] { app.run(); });
  app.ready.get_future().wait();
  tb.settle();
  drive(tb, *node, 4000);
  app.stop();
  runner.join();
  EXPECT_EQ(app.seen.load(), 4);
}
