#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "e2dev/common/log.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/e2ap/subscription_fsm.hpp"
#include "e2dev/net/framed_connection.hpp"
#include "e2dev/ric/inventory.hpp"
#include "e2dev/ric/north.hpp"
#include "e2dev/sm/registry.hpp"

namespace e2dev::ric {

// ran_function_id under which the reference node advertises KPM.
inline constexpr std::uint16_t kKpmRanFunctionId = 2;

sm::FunctionBindings default_bindings();

struct RicConfig {
  std::string listen = "inproc://ric";
  sm::FunctionBindings bindings = default_bindings();
  std::uint64_t seed = 0;  // picks the first RicRequestId instance number
  std::shared_ptr<net::WorkTracker> tracker;
  std::shared_ptr<Logger> logger;
};

struct SubscriptionRecord {
  std::string xapp_id;
  std::string node;
  e2ap::RicRequestId request_id;
  std::uint16_t ran_function_id = 0;
  std::uint8_t action_id = 0;
  e2ap::SubscriptionState state = e2ap::SubscriptionState::Idle;
};

struct RicStats {
  std::uint64_t indications_delivered = 0;
  std::uint64_t unknown_request_ids = 0;
  std::uint64_t sn_gaps = 0;
  std::uint64_t sn_duplicates = 0;
  std::uint64_t protocol_violations = 0;
  std::uint64_t error_indications_received = 0;
};

/// Near-RT RIC simulator: E2 termination, node inventory, subscription
/// manager and xApp routing behind one listening endpoint.
///
/// One reader thread per connection. All tables sit behind a single mutex and
/// frames are sent while it is held, so indications of one subscription reach
/// the owning xApp in the order the node sent them.
class Ric {
 public:
  Ric(RicConfig config, std::shared_ptr<const sm::Registry> registry);
  ~Ric();

  Ric(const Ric&) = delete;
  Ric& operator=(const Ric&) = delete;

  void start();
  void stop();

  // Resolved listening endpoint (valid after start()).
  std::string endpoint() const;

  std::vector<InventoryRecord> inventory_snapshot() const;
  std::optional<NodeRecord> node(const std::string& inventory_name) const;
  std::vector<InventoryEvent> event_log() const;
  std::vector<SubscriptionRecord> subscriptions() const;
  RicStats stats() const;

 private:
  enum class Kind { unknown, node, xapp };

  struct Conn {
    std::uint64_t id = 0;
    std::unique_ptr<net::FramedConnection> link;
    Kind kind = Kind::unknown;
    std::string node_name;
    std::string xapp_id;
    std::uint16_t xapp_index = 0;
  };

  struct LiveSub {
    SubscriptionRecord rec;
    e2ap::SubscriptionFsm fsm;
    std::uint64_t xapp_conn = 0;  // 0 once the owning xApp has gone
    std::uint64_t node_conn = 0;
  };

  struct PendingControl {
    std::uint64_t xapp_conn = 0;
    std::string node;
  };

  void accept_loop();
  void reader_loop(std::shared_ptr<Conn> conn);
  void handle_frame(Conn& conn, const e2ap::RawFrame& frame);
  void on_closed(Conn& conn);

  // E2 side
  void handle_setup(Conn& conn, const e2ap::E2SetupRequest& req);
  void handle_sub_response(const e2ap::RicSubscriptionResponse& resp);
  void handle_sub_failure(const e2ap::RicSubscriptionFailure& fail);
  void route_indication(Conn& conn, const e2ap::RicIndication& ind);
  void handle_del_response(const e2ap::RicSubscriptionDeleteResponse& resp);
  void handle_control_ack(const e2ap::RicControlAcknowledge& ack);
  void handle_node_disconnect(const std::string& inventory_name);

  // North side
  void handle_register(Conn& conn, const north::XAppRegister& m);
  void handle_xapp_subscribe(Conn& conn, const north::SubscribeRequest& m);
  void handle_xapp_delete(Conn& conn, const north::SubscriptionDeleteRequest& m);
  void handle_xapp_control(Conn& conn, const north::ControlForward& m);
  north::FunctionDefsResponse function_defs(const std::string& node) const;
  void handle_xapp_disconnect(Conn& conn);

  void send_e2(std::uint64_t conn_id, const e2ap::Message& m);
  void send_north(std::uint64_t conn_id, const north::Message& m);
  void record_event(InventoryEvent e);
  e2ap::RicRequestId allocate_request_id(std::uint16_t requestor);
  void request_delete(LiveSub& sub);
  void log(const std::string& msg) const;

  RicConfig config_;
  std::shared_ptr<const sm::Registry> registry_;

  mutable std::mutex mu_;
  std::unique_ptr<net::Listener> listener_;
  std::string endpoint_;
  std::thread acceptor_;
  std::vector<std::thread> readers_;
  std::map<std::uint64_t, std::shared_ptr<Conn>> conns_;
  std::uint64_t next_conn_id_ = 1;
  bool stopping_ = false;

  Inventory inventory_;
  std::vector<InventoryEvent> events_;
  std::map<std::string, std::uint64_t> node_conns_;
  std::map<std::string, std::uint64_t> xapps_;
  std::uint16_t next_xapp_index_ = 1;
  std::uint16_t next_instance_ = 1;
  std::map<e2ap::RicRequestId, LiveSub> subs_;
  std::map<e2ap::RicRequestId, PendingControl> controls_;
  RicStats stats_;
};

}  // namespace e2dev::ric
