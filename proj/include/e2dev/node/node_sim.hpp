#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "e2dev/common/log.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/kpm/types.hpp"
#include "e2dev/net/framed_connection.hpp"
#include "e2dev/node/report.hpp"
#include "e2dev/node/trace.hpp"

namespace e2dev::node {

struct NodeConfig {
  e2ap::GlobalE2NodeId id;
  std::string ric_endpoint = "inproc://ric";
  TrafficTrace trace;
  std::vector<UeEvent> ue_events;
  OverheadModel model;
  std::uint16_t ran_function_id = 2;
  kpm::RanFunctionDefinition function = kpm::reference_function_definition();
  // Advertised next to the KPM function, e.g. to exercise unbound service models.
  std::vector<e2ap::RanFunctionItem> extra_functions;
  int connect_attempts = 5;
  std::chrono::milliseconds retry_delay{20};
  std::chrono::milliseconds setup_timeout{5000};
  std::uint64_t report_phase_offset_ms = 0;
  std::shared_ptr<net::WorkTracker> tracker;
  std::shared_ptr<Logger> logger;
  // Called with each encoded indication message before it is framed; lets
  // tests corrupt payloads in flight.
  std::function<void(std::uint32_t sn, Octets& message)> fault_injector;
};

// What the node put on the wire for one indication, before encoding.
struct SentIndication {
  e2ap::RicRequestId request_id;
  std::uint32_t sn = 0;
  kpm::IndicationHeader header;
  kpm::IndicationMessage message;
};

struct ControlRecord {
  e2ap::RicRequestId request_id;
  std::uint16_t ran_function_id = 0;
  Octets header;
  Octets message;
};

/// Simulated gNB. Time only moves when the owner calls advance_to(); each
/// call emits every reporting window that has closed by then, so a scenario
/// runs as fast as the frames can be handled.
class NodeSim {
 public:
  explicit NodeSim(NodeConfig config);
  ~NodeSim();

  NodeSim(const NodeSim&) = delete;
  NodeSim& operator=(const NodeSim&) = delete;

  // Connects (bounded retry) and completes E2 setup. Throws TransportError
  // when the RIC stays unreachable, ProtocolError when setup fails.
  void start();
  // Emits indications for every window ending at or before t_ms.
  void advance_to(std::uint64_t t_ms);
  // Drops the E2 connection without any goodbye, as a crashed node would.
  void disconnect();
  void stop();

  std::string inventory_name() const;
  std::uint64_t now() const;
  std::size_t active_subscriptions() const;
  std::vector<Octets> indication_frames() const;
  std::vector<SentIndication> sent_indications() const;
  std::vector<ControlRecord> control_log() const;
  std::uint64_t unknown_metric_warnings() const;
  Octets function_definition_octets() const;

 private:
  struct Sub {
    e2ap::RicRequestId request_id;
    std::uint16_t ran_function_id = 0;
    std::uint8_t action_id = 0;
    kpm::ActionDefinition action;
    std::uint64_t period_ms = 0;
    std::uint64_t next_window = 0;
    std::uint32_t next_sn = 0;
  };

  void reader_loop();
  void handle(const e2ap::Message& m);
  void handle_subscription(const e2ap::RicSubscriptionRequest& req);
  std::optional<e2ap::Cause> check_action(const e2ap::RicAction& a, kpm::ActionDefinition& out) const;
  void emit(Sub& sub);
  void send(const e2ap::Message& m);
  void log(const std::string& msg) const;

  NodeConfig config_;
  std::string name_;
  UePresence presence_;
  Octets definition_octets_;

  mutable std::mutex mu_;
  std::condition_variable setup_cv_;
  std::optional<bool> setup_ok_;
  std::unique_ptr<net::FramedConnection> link_;
  std::thread reader_;
  std::uint64_t now_ = 0;
  std::map<e2ap::RicRequestId, Sub> subs_;
  std::vector<Octets> frames_;
  std::vector<SentIndication> sent_;
  std::vector<ControlRecord> controls_;
  std::uint64_t unknown_metrics_ = 0;
};

}  // namespace e2dev::node
