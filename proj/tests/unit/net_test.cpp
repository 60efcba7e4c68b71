#include <gtest/gtest.h>

#include <thread>

#include "e2dev/common/error.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/net/framed_connection.hpp"
#include "e2dev/net/stream.hpp"

using namespace e2dev;
using namespace e2dev::net;
using namespace std::chrono_literals;

namespace {

Octets read_exact(ByteStream& s, std::size_t n) {
  Octets out(n);
  std::size_t got = 0;
  while (got < n) {
    const auto k = s.read(std::span(out).subspan(got));
    if (k == 0) break;
    got += k;
  }
  out.resize(got);
  return out;
}

void exchange_frames(const std::string& endpoint) {
  auto listener = listen(endpoint);
  std::unique_ptr<ByteStream> server;
  std::thread acceptor([&] { server = listener->accept(); });
  auto client = connect(listener->endpoint());
  acceptor.join();
  ASSERT_TRUE(server);

  FramedConnection a(std::move(client));
  FramedConnection b(std::move(server));
  const auto f1 = e2ap::frame(e2ap::RicSubscriptionDeleteResponse{{1, 1}});
  const auto f2 = e2ap::frame(e2ap::RicIndication{{3, 4}, 1, 9, Octets{1, 2}, Octets(5000, 7)});
  ASSERT_TRUE(a.send_frame(f1));
  ASSERT_TRUE(a.send_frame(f2));
  auto in1 = b.receive();
  auto in2 = b.receive();
  ASSERT_TRUE(in1 && in2);
  EXPECT_EQ(in1->frame.type, 9);
  EXPECT_EQ(e2ap::encode_frame(in2->frame.type, in2->frame.payload), f2);

  a.close();
  EXPECT_FALSE(b.receive().has_value());
  EXPECT_FALSE(a.send_frame(f1));
  listener->close();
}

}  // namespace

TEST(Pipe, BytesArriveInOrder) {
  auto [a, b] = make_pipe();
  a->write(Octets{1, 2, 3});
  a->write(Octets{4});
  EXPECT_EQ(read_exact(*b, 4), (Octets{1, 2, 3, 4}));
  b->write(Octets{9});
  EXPECT_EQ(read_exact(*a, 1), Octets{9});
}

TEST(Pipe, ShutdownUnblocksReader) {
  auto [a, b] = make_pipe();
  std::size_t got = 99;
  std::thread reader([&] {
    std::uint8_t buf[4];
    got = b->read(buf);
  });
  std::this_thread::sleep_for(20ms);
  a->shutdown();
  reader.join();
  EXPECT_EQ(got, 0u);
  EXPECT_THROW(a->write(Octets{1}), TransportError);
}

TEST(Inproc, ConnectWithoutListenerFails) {
  EXPECT_THROW(connect("inproc://nobody-here"), TransportError);
}

TEST(Inproc, FramesRoundTrip) { exchange_frames("inproc://net-test"); }

TEST(Tcp, LoopbackFramesRoundTrip) { exchange_frames("tcp://127.0.0.1:0"); }

TEST(Tcp, ConnectToClosedPortFails) {
  auto l = listen("127.0.0.1:0");
  const auto ep = l->endpoint();
  l->close();
  l.reset();
  EXPECT_THROW(connect(ep), TransportError);
}

TEST(FramedConnection, ReassemblesSplitWrites) {
  auto [a, b] = make_pipe();
  FramedConnection rx(std::move(b));
  const auto f = e2ap::frame(e2ap::RicControlAcknowledge{{5, 6}});
  std::thread writer([&, s = a.get()] {
    for (auto byte : f) {
      s->write(Octets{byte});
      std::this_thread::sleep_for(1ms);
    }
  });
  auto in = rx.receive();
  writer.join();
  ASSERT_TRUE(in);
  EXPECT_EQ(in->frame.type, 11);
  EXPECT_EQ(e2ap::decode_payload(in->frame.type, in->frame.payload),
            e2ap::Message(e2ap::RicControlAcknowledge{{5, 6}}));
}

TEST(FramedConnection, CorruptLengthIsFrameError) {
  auto [a, b] = make_pipe();
  FramedConnection rx(std::move(b));
  a->write(Octets{0, 0, 0, 0, 9});
  EXPECT_THROW(rx.receive(), FrameError);
}

TEST(WorkTracker, TicketsGateIdle) {
  auto tracker = std::make_shared<WorkTracker>();
  auto [a, b] = make_pipe();
  FramedConnection tx(std::move(a), tracker);
  FramedConnection rx(std::move(b), tracker);
  tx.send_frame(e2ap::frame(e2ap::ErrorIndication{}));
  EXPECT_EQ(tracker->pending(), 1u);
  EXPECT_FALSE(tracker->wait_idle(10ms));
  auto in = rx.receive();
  ASSERT_TRUE(in);
  EXPECT_EQ(tracker->pending(), 1u);  // held until handled
  in->ticket.release();
  EXPECT_TRUE(tracker->wait_idle(10ms));
}
