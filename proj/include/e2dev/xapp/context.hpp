#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "e2dev/common/error.hpp"
#include "e2dev/common/log.hpp"
#include "e2dev/e2ap/messages.hpp"
#include "e2dev/kpm/types.hpp"
#include "e2dev/net/framed_connection.hpp"
#include "e2dev/ric/inventory.hpp"
#include "e2dev/ric/north.hpp"
#include "e2dev/sm/registry.hpp"

namespace e2dev::xapp {

class RegistrationRejected : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class SubscriptionRefused : public ProtocolError {
 public:
  SubscriptionRefused(e2ap::Cause cause, const std::string& what) : ProtocolError(what), cause_(cause) {}
  e2ap::Cause cause() const { return cause_; }

 private:
  e2ap::Cause cause_;
};

struct XappOptions {
  std::string ric_endpoint = "inproc://ric";
  std::string xapp_id;
  std::shared_ptr<const sm::Registry> registry;
  sm::FunctionBindings bindings;  // empty -> the RIC's default bindings
  std::shared_ptr<net::WorkTracker> tracker;
  std::shared_ptr<Logger> logger;
  int connect_attempts = 3;
  std::chrono::milliseconds retry_delay{20};
  std::chrono::milliseconds rpc_timeout{5000};
};

struct FunctionInfo {
  std::uint16_t ran_function_id = 0;
  std::optional<sm::SmCodecKey> codec;  // nullopt -> opaque entry
  kpm::FunctionSummary summary;
  std::string definition_hex;
};

enum class DecodeStatus { decoded, undecoded, malformed };
const char* to_string(DecodeStatus s);

struct DecodedIndication {
  std::string node;
  std::uint16_t ran_function_id = 0;
  e2ap::RicRequestId request_id;
  std::uint32_t sn = 0;
  e2ap::SnVerdict verdict = e2ap::SnVerdict::ok;
  sm::Decoded<kpm::IndicationHeader> header;
  sm::Decoded<kpm::IndicationMessage> message;
  DecodeStatus status = DecodeStatus::decoded;
  std::string error;  // set when malformed
  std::string header_hex;
  std::string message_hex;
  bool after_delete_request = false;  // arrived while our delete was in flight
};

struct SubscriptionEnd {
  e2ap::RicRequestId request_id;
  std::string node;
  e2ap::Cause cause = e2ap::Cause::unspecified;
};

struct XappStats {
  std::uint64_t indications = 0;
  std::uint64_t decode_failures = 0;
  std::uint64_t undecoded = 0;
  std::uint64_t gaps = 0;
  std::uint64_t duplicates = 0;
};

struct RunResult {
  bool logic_failed = false;
  std::string error;
};

/// Client side of one xApp: registration, discovery, subscriptions, control
/// and decoded indication dispatch.
///
/// Two threads touch a context: the one running run() (dispatch loop, where
/// every callback is invoked, one at a time) and the logic thread run()
/// starts. subscribe/unsubscribe/send_control and the discovery calls may be
/// used from either, and from callbacks.
class XappContext {
 public:
  using IndicationCallback = std::function<void(const DecodedIndication&)>;
  using EndCallback = std::function<void(const SubscriptionEnd&)>;
  using Logic = std::function<void(XappContext&)>;

  // Connects and registers. Throws TransportError when the RIC is
  // unreachable, RegistrationRejected when the id is already taken.
  static std::unique_ptr<XappContext> connect(XappOptions options);
  ~XappContext();

  XappContext(const XappContext&) = delete;
  XappContext& operator=(const XappContext&) = delete;

  const std::string& xapp_id() const { return options_.xapp_id; }

  std::vector<ric::InventoryRecord> list_nodes();
  std::map<std::uint16_t, FunctionInfo> available_functions(const std::string& node);

  // Throws ValidationError before sending anything when the arguments break
  // the action/trigger rules, SubscriptionRefused when the RIC or node says no.
  e2ap::RicRequestId subscribe(const std::string& node, std::uint16_t ran_function_id,
                               const std::vector<std::string>& metrics, std::uint32_t reporting_period_ms,
                               std::uint32_t granularity_ms);
  void unsubscribe(const e2ap::RicRequestId& id);
  std::vector<e2ap::RicRequestId> active_subscriptions() const;

  bool send_control(const std::string& node, std::uint16_t ran_function_id, const Octets& header,
                    const Octets& message);

  void on_indication(IndicationCallback cb);
  void on_subscription_end(EndCallback cb);

  // Starts `logic` on its own thread and dispatches callbacks on the calling
  // thread until stop() or the RIC connection ends. If logic throws, every
  // subscription is deleted (best effort) and the context stops.
  RunResult run(Logic logic);
  void stop();
  // Closes the RIC connection; the RIC then treats the xApp as gone.
  void close();

  XappStats stats() const;

 private:
  struct SubInfo {
    std::string node;
    std::uint16_t ran_function_id = 0;
    kpm::ActionDefinition action;
    std::uint32_t reporting_period_ms = 0;
    bool delete_requested = false;
    bool closed = false;
  };

  struct Dispatch {
    ric::north::Message message;
    net::WorkTicket ticket;
  };

  explicit XappContext(XappOptions options);
  void reader_loop();
  ric::north::Message rpc(const ric::north::Message& request, std::uint8_t response_type);
  DecodedIndication decode(const ric::north::IndicationForward& f);
  void dispatch(const ric::north::Message& m);
  void log(const std::string& msg) const;
  std::shared_ptr<const sm::SmCodec> codec_for(std::uint16_t ran_function_id) const;

  XappOptions options_;
  std::unique_ptr<net::FramedConnection> link_;
  std::thread reader_;

  std::mutex rpc_mu_;  // one request in flight at a time

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::uint8_t awaiting_ = 0;
  std::optional<ric::north::Message> response_;
  net::WorkTicket response_ticket_;
  std::deque<Dispatch> queue_;
  bool link_down_ = false;
  bool stop_ = false;
  std::map<e2ap::RicRequestId, SubInfo> subs_;
  IndicationCallback on_indication_;
  EndCallback on_end_;
  XappStats stats_;
};

/// Extension-style entry point: derive, implement logic(), then connect()
/// and run(). stop() may be called from any thread once connect() returned.
class XappBase {
 public:
  explicit XappBase(XappOptions options) : options_(std::move(options)) {}
  virtual ~XappBase() = default;

  void connect();
  RunResult run();
  void stop();
  void close();
  XappContext& context() { return *ctx_; }

 protected:
  virtual void logic(XappContext& ctx) = 0;
  virtual void handle_indication(const DecodedIndication&) {}
  virtual void handle_subscription_end(const SubscriptionEnd&) {}

 private:
  XappOptions options_;
  std::unique_ptr<XappContext> ctx_;
};

}  // namespace e2dev::xapp
