#include "e2dev/ric/ric.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "e2dev/common/error.hpp"
#include "e2dev/kpm/types.hpp"

namespace e2dev::ric {

using e2ap::Cause;
using e2ap::FsmAction;
using e2ap::SubscriptionEvent;
using e2ap::SubscriptionState;

namespace {

bool has_action(const e2ap::Transition& t, FsmAction a) {
  return std::find(t.actions.begin(), t.actions.end(), a) != t.actions.end();
}

// Admission check for a decodable action: the style must exist in the
// node's function definition and carry every requested metric.
std::optional<Cause> check_admission(const sm::SmCodec& codec, const StoredFunction& fn,
                                     const Octets& action_octets) {
  sm::Decoded<kpm::ActionDefinition> action;
  sm::Decoded<kpm::RanFunctionDefinition> def;
  try {
    action = codec.decode_action_definition(action_octets);
    def = codec.decode_function_definition(from_hex(fn.definition_hex));
  } catch (const CodecError&) {
    return std::nullopt;  // not decodable here; the node decides
  }
  const auto* a = std::get_if<kpm::ActionDefinition>(&action);
  const auto* d = std::get_if<kpm::RanFunctionDefinition>(&def);
  if (a == nullptr || d == nullptr) return std::nullopt;
  const auto style = std::find_if(d->styles.begin(), d->styles.end(),
                                  [&](const kpm::ReportStyle& s) { return s.style_id == a->style_id; });
  if (style == d->styles.end()) return Cause::unsupported_function;
  for (const auto& m : a->metrics) {
    if (std::find(style->metrics.begin(), style->metrics.end(), m) == style->metrics.end()) {
      return Cause::unknown_metric;
    }
  }
  return std::nullopt;
}

}  // namespace

sm::FunctionBindings default_bindings() { return {{kKpmRanFunctionId, sm::SmCodecKey{"KPM", "3.00"}}}; }

Ric::Ric(RicConfig config, std::shared_ptr<const sm::Registry> registry)
    : config_(std::move(config)), registry_(std::move(registry)) {
  std::mt19937_64 rng(config_.seed);
  next_instance_ = static_cast<std::uint16_t>(rng() % 32768 + 1);
}

Ric::~Ric() { stop(); }

void Ric::start() {
  std::lock_guard lk(mu_);
  if (listener_) return;
  listener_ = net::listen(config_.listen);
  endpoint_ = listener_->endpoint();
  acceptor_ = std::thread([this] { accept_loop(); });
  log("listening on " + endpoint_);
}

void Ric::stop() {
  std::vector<std::shared_ptr<Conn>> conns;
  {
    std::lock_guard lk(mu_);
    if (!listener_ || stopping_) return;
    stopping_ = true;
    listener_->close();
    for (auto& [_, c] : conns_) conns.push_back(c);
  }
  if (acceptor_.joinable()) acceptor_.join();
  for (auto& c : conns) c->link->close();
  std::vector<std::thread> readers;
  {
    std::lock_guard lk(mu_);
    readers.swap(readers_);
  }
  for (auto& t : readers) t.join();
}

std::string Ric::endpoint() const {
  std::lock_guard lk(mu_);
  return endpoint_;
}

void Ric::accept_loop() {
  for (;;) {
    auto stream = listener_->accept();
    if (!stream) return;
    std::lock_guard lk(mu_);
    if (stopping_) {
      stream->shutdown();
      return;
    }
    auto conn = std::make_shared<Conn>();
    conn->id = next_conn_id_++;
    conn->link = std::make_unique<net::FramedConnection>(std::move(stream), config_.tracker);
    conns_[conn->id] = conn;
    readers_.emplace_back([this, conn] { reader_loop(conn); });
  }
}

void Ric::reader_loop(std::shared_ptr<Conn> conn) {
  for (;;) {
    std::optional<net::Incoming> in;
    try {
      in = conn->link->receive();
    } catch (const FrameError& e) {
      log(std::string("closing connection on framing error: ") + e.what());
    }
    if (!in) break;
    std::lock_guard lk(mu_);
    handle_frame(*conn, in->frame);
  }
  std::lock_guard lk(mu_);
  on_closed(*conn);
}

void Ric::handle_frame(Conn& conn, const e2ap::RawFrame& frame) {
  if (conn.kind == Kind::unknown) conn.kind = north::is_north_type(frame.type) ? Kind::xapp : Kind::node;

  if (conn.kind == Kind::node) {
    e2ap::Message msg;
    try {
      msg = e2ap::decode_payload(frame.type, frame.payload);
    } catch (const Error& e) {
      log(std::string("bad E2 frame: ") + e.what());
      send_e2(conn.id, e2ap::ErrorIndication{Cause::unspecified});
      return;
    }
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, e2ap::E2SetupRequest>) handle_setup(conn, m);
          else if constexpr (std::is_same_v<T, e2ap::RicSubscriptionResponse>) handle_sub_response(m);
          else if constexpr (std::is_same_v<T, e2ap::RicSubscriptionFailure>) handle_sub_failure(m);
          else if constexpr (std::is_same_v<T, e2ap::RicIndication>) route_indication(conn, m);
          else if constexpr (std::is_same_v<T, e2ap::RicSubscriptionDeleteResponse>) handle_del_response(m);
          else if constexpr (std::is_same_v<T, e2ap::RicControlAcknowledge>) handle_control_ack(m);
          else if constexpr (std::is_same_v<T, e2ap::ErrorIndication>) {
            ++stats_.error_indications_received;
            log(std::string("error indication from node: ") + e2ap::to_string(m.cause));
          } else {
            ++stats_.protocol_violations;
            log(std::string("unexpected message from node: ") + e2ap::type_name(frame.type));
          }
        },
        msg);
    return;
  }

  north::Message msg;
  try {
    msg = north::decode_payload(frame.type, frame.payload);
  } catch (const Error& e) {
    log(std::string("bad north frame: ") + e.what());
    return;
  }
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, north::XAppRegister>) {
          handle_register(conn, m);
        } else if constexpr (std::is_same_v<T, north::InventoryRequest>) {
          send_north(conn.id, north::InventoryResponse{inventory_to_json(inventory_.snapshot())});
        } else if constexpr (std::is_same_v<T, north::FunctionDefsRequest>) {
          send_north(conn.id, function_defs(m.node));
        } else if constexpr (std::is_same_v<T, north::SubscribeRequest>) {
          handle_xapp_subscribe(conn, m);
        } else if constexpr (std::is_same_v<T, north::ControlForward>) {
          handle_xapp_control(conn, m);
        } else if constexpr (std::is_same_v<T, north::SubscriptionDeleteRequest>) {
          handle_xapp_delete(conn, m);
        } else {
          ++stats_.protocol_violations;
          log("unexpected north message type " + std::to_string(frame.type));
        }
      },
      msg);
}

void Ric::on_closed(Conn& conn) {
  if (conn.kind == Kind::node && !conn.node_name.empty()) {
    auto it = node_conns_.find(conn.node_name);
    if (it != node_conns_.end() && it->second == conn.id) handle_node_disconnect(conn.node_name);
  } else if (conn.kind == Kind::xapp) {
    handle_xapp_disconnect(conn);
  }
  conn.link->close();
  conns_.erase(conn.id);
}

// --- E2 side ------------------------------------------------------------------

void Ric::handle_setup(Conn& conn, const e2ap::E2SetupRequest& req) {
  e2ap::E2SetupResponse resp;
  NodeSetupEvent ev{req.node_id, {}};
  std::set<std::uint16_t> seen;
  for (const auto& f : req.functions) {
    if (!seen.insert(f.ran_function_id).second) {
      resp.rejected.push_back({f.ran_function_id, Cause::unspecified});
      continue;
    }
    resp.accepted_ids.push_back(f.ran_function_id);
    ev.functions.push_back(f);
  }
  const std::string name = inventory_name(req.node_id);

  // A re-setup on a new connection supersedes the old one.
  if (auto old = node_conns_.find(name); old != node_conns_.end() && old->second != conn.id) {
    handle_node_disconnect(name);
  }
  conn.node_name = name;
  node_conns_[name] = conn.id;
  record_event(std::move(ev));
  send_e2(conn.id, resp);
  log("E2 setup from " + name + ": " + inventory_to_json(inventory_.snapshot()));
}

void Ric::handle_sub_response(const e2ap::RicSubscriptionResponse& resp) {
  auto it = subs_.find(resp.request_id);
  if (it == subs_.end()) {
    ++stats_.unknown_request_ids;
    return;
  }
  auto& sub = it->second;
  const bool admitted = !resp.admitted_action_ids.empty();
  const auto t = sub.fsm.apply(admitted ? SubscriptionEvent::RecvSubRespAdmitted
                                        : SubscriptionEvent::RecvSubRespNoneAdmitted);
  sub.rec.state = sub.fsm.state();
  if (has_action(t, FsmAction::ProtocolViolation)) {
    ++stats_.protocol_violations;
    return;
  }
  if (!resp.admitted_action_ids.empty()) sub.rec.action_id = resp.admitted_action_ids.front();
  const Cause cause = resp.not_admitted.empty() ? Cause::unspecified : resp.not_admitted.front().cause;
  if (sub.xapp_conn != 0) {
    send_north(sub.xapp_conn, north::SubscribeResponse{resp.request_id, admitted, cause});
  } else if (admitted) {
    request_delete(sub);  // owner went away while pending
  }
  if (sub.fsm.state() == SubscriptionState::Closed) subs_.erase(it);
}

void Ric::handle_sub_failure(const e2ap::RicSubscriptionFailure& fail) {
  auto it = subs_.find(fail.request_id);
  if (it == subs_.end()) {
    ++stats_.unknown_request_ids;
    return;
  }
  auto& sub = it->second;
  const auto t = sub.fsm.apply(SubscriptionEvent::RecvSubFail);
  if (has_action(t, FsmAction::ProtocolViolation)) {
    ++stats_.protocol_violations;
    return;
  }
  if (sub.xapp_conn != 0) send_north(sub.xapp_conn, north::SubscribeResponse{fail.request_id, false, fail.cause});
  subs_.erase(it);
}

void Ric::route_indication(Conn& conn, const e2ap::RicIndication& ind) {
  auto it = subs_.find(ind.request_id);
  if (it == subs_.end()) {
    ++stats_.unknown_request_ids;
    send_e2(conn.id, e2ap::ErrorIndication{Cause::unspecified});
    return;
  }
  auto& sub = it->second;
  const auto t = sub.fsm.apply(SubscriptionEvent::RecvIndication);
  if (!has_action(t, FsmAction::Deliver)) {
    ++stats_.protocol_violations;
    return;
  }
  const auto verdict = sub.fsm.validate_sn(ind.sequence_number);
  if (verdict == e2ap::SnVerdict::gap) {
    ++stats_.sn_gaps;
    log("sequence gap on " + ind.request_id.str() + " at sn " + std::to_string(ind.sequence_number));
  } else if (verdict == e2ap::SnVerdict::duplicate) {
    ++stats_.sn_duplicates;
    log("duplicate sn " + std::to_string(ind.sequence_number) + " on " + ind.request_id.str());
  }
  if (sub.xapp_conn == 0) return;
  ++stats_.indications_delivered;
  send_north(sub.xapp_conn, north::IndicationForward{ind.request_id, ind.sequence_number, verdict,
                                                     to_hex(ind.header), to_hex(ind.message)});
}

void Ric::handle_del_response(const e2ap::RicSubscriptionDeleteResponse& resp) {
  auto it = subs_.find(resp.request_id);
  if (it == subs_.end()) {
    ++stats_.unknown_request_ids;
    return;
  }
  auto& sub = it->second;
  const auto t = sub.fsm.apply(SubscriptionEvent::RecvDelResp);
  if (has_action(t, FsmAction::ProtocolViolation)) {
    ++stats_.protocol_violations;
    return;
  }
  if (sub.xapp_conn != 0) send_north(sub.xapp_conn, north::SubscriptionDeleteResponse{resp.request_id});
  subs_.erase(it);
}

void Ric::handle_control_ack(const e2ap::RicControlAcknowledge& ack) {
  auto it = controls_.find(ack.request_id);
  if (it == controls_.end()) {
    ++stats_.unknown_request_ids;
    return;
  }
  send_north(it->second.xapp_conn, north::ControlResult{true});
  controls_.erase(it);
}

void Ric::handle_node_disconnect(const std::string& name) {
  if (!inventory_.find(name)) return;
  node_conns_.erase(name);
  record_event(NodeDisconnectEvent{name});
  log("node " + name + " disconnected");

  for (auto it = subs_.begin(); it != subs_.end();) {
    auto& sub = it->second;
    if (sub.rec.node != name) {
      ++it;
      continue;
    }
    const auto before = sub.fsm.state();
    sub.fsm.apply(SubscriptionEvent::PeerDisconnect);
    if (sub.xapp_conn != 0) {
      if (before == SubscriptionState::Pending) {
        send_north(sub.xapp_conn, north::SubscribeResponse{sub.rec.request_id, false, Cause::node_unavailable});
      } else if (before == SubscriptionState::Deleting) {
        send_north(sub.xapp_conn, north::SubscriptionDeleteResponse{sub.rec.request_id});
      } else {
        send_north(sub.xapp_conn, north::SubscriptionEnded{sub.rec.request_id, Cause::node_unavailable});
      }
    }
    it = subs_.erase(it);
  }
  for (auto it = controls_.begin(); it != controls_.end();) {
    if (it->second.node == name) {
      send_north(it->second.xapp_conn, north::ControlResult{false});
      it = controls_.erase(it);
    } else {
      ++it;
    }
  }
}

// --- north side ---------------------------------------------------------------

void Ric::handle_register(Conn& conn, const north::XAppRegister& m) {
  if (!conn.xapp_id.empty() || xapps_.count(m.xapp_id) > 0) {
    log("rejecting xApp registration '" + m.xapp_id + "'");
    send_north(conn.id, north::XAppRegisterAck{false});
    return;
  }
  conn.xapp_id = m.xapp_id;
  conn.xapp_index = next_xapp_index_++;
  xapps_[m.xapp_id] = conn.id;
  log("xApp '" + m.xapp_id + "' registered");
  send_north(conn.id, north::XAppRegisterAck{true});
}

north::FunctionDefsResponse Ric::function_defs(const std::string& node) const {
  north::FunctionDefsResponse resp;
  const auto* rec = inventory_.find(node);
  if (!rec) return resp;
  for (const auto& [id, fn] : rec->functions) {
    north::FunctionDef d{id, fn.definition_hex, "", ""};
    if (auto b = config_.bindings.find(id); b != config_.bindings.end()) {
      d.sm_name = b->second.sm_name;
      d.version = b->second.version;
    }
    resp.functions.push_back(std::move(d));
  }
  return resp;
}

void Ric::handle_xapp_subscribe(Conn& conn, const north::SubscribeRequest& m) {
  auto refuse = [&](Cause c) { send_north(conn.id, north::SubscribeResponse{{}, false, c}); };
  if (conn.xapp_id.empty()) return refuse(Cause::unspecified);

  const auto* node = inventory_.find(m.node);
  auto nc = node_conns_.find(m.node);
  if (!node || node->connection_status != ConnectionStatus::CONNECTED || nc == node_conns_.end()) {
    log("subscribe from '" + conn.xapp_id + "' refused: node " + m.node + " unavailable");
    return refuse(Cause::node_unavailable);
  }
  auto fn = node->functions.find(m.ran_function_id);
  if (fn == node->functions.end()) return refuse(Cause::unsupported_function);

  Octets trigger;
  Octets action;
  try {
    trigger = from_hex(m.event_trigger_hex);
    action = from_hex(m.action_hex);
  } catch (const CodecError&) {
    return refuse(Cause::unspecified);
  }

  const auto codec = registry_->resolve_for_function(config_.bindings, m.ran_function_id);
  if (auto cause = check_admission(*codec, fn->second, action)) {
    log("subscribe from '" + conn.xapp_id + "' refused: " + e2ap::to_string(*cause));
    return refuse(*cause);
  }

  const auto rid = allocate_request_id(conn.xapp_index);
  LiveSub sub;
  sub.rec = SubscriptionRecord{conn.xapp_id, m.node, rid, m.ran_function_id, 1, SubscriptionState::Idle};
  sub.xapp_conn = conn.id;
  sub.node_conn = nc->second;
  const auto t = sub.fsm.apply(SubscriptionEvent::SendSubReq);
  sub.rec.state = sub.fsm.state();
  if (has_action(t, FsmAction::EmitSubscriptionRequest)) {
    send_e2(sub.node_conn, e2ap::RicSubscriptionRequest{rid, m.ran_function_id, std::move(trigger),
                                                        {e2ap::RicAction{1, std::move(action)}}});
  }
  subs_.emplace(rid, std::move(sub));
}

void Ric::request_delete(LiveSub& sub) {
  const auto t = sub.fsm.apply(SubscriptionEvent::SendDelReq);
  sub.rec.state = sub.fsm.state();
  if (has_action(t, FsmAction::EmitDeleteRequest)) {
    send_e2(sub.node_conn, e2ap::RicSubscriptionDeleteRequest{sub.rec.request_id});
  }
}

void Ric::handle_xapp_delete(Conn& conn, const north::SubscriptionDeleteRequest& m) {
  auto it = subs_.find(m.request_id);
  if (it == subs_.end() || it->second.xapp_conn != conn.id ||
      it->second.fsm.state() != SubscriptionState::Active) {
    send_north(conn.id, north::SubscriptionDeleteResponse{m.request_id});
    return;
  }
  request_delete(it->second);
}

void Ric::handle_xapp_control(Conn& conn, const north::ControlForward& m) {
  const auto* node = inventory_.find(m.node);
  auto nc = node_conns_.find(m.node);
  if (conn.xapp_id.empty() || !node || node->connection_status != ConnectionStatus::CONNECTED ||
      nc == node_conns_.end()) {
    send_north(conn.id, north::ControlResult{false});
    return;
  }
  e2ap::RicControlRequest req;
  try {
    req.header = from_hex(m.header_hex);
    req.message = from_hex(m.message_hex);
  } catch (const CodecError&) {
    send_north(conn.id, north::ControlResult{false});
    return;
  }
  req.request_id = allocate_request_id(conn.xapp_index);
  req.ran_function_id = m.ran_function_id;
  req.ack_requested = true;
  controls_[req.request_id] = PendingControl{conn.id, m.node};
  send_e2(nc->second, req);
}

void Ric::handle_xapp_disconnect(Conn& conn) {
  if (conn.xapp_id.empty()) return;
  xapps_.erase(conn.xapp_id);
  log("xApp '" + conn.xapp_id + "' disconnected");
  for (auto& [rid, sub] : subs_) {
    if (sub.xapp_conn != conn.id) continue;
    sub.xapp_conn = 0;
    if (sub.fsm.state() == SubscriptionState::Active) request_delete(sub);
  }
  for (auto it = controls_.begin(); it != controls_.end();) {
    it = it->second.xapp_conn == conn.id ? controls_.erase(it) : std::next(it);
  }
}

// --- helpers ------------------------------------------------------------------

void Ric::send_e2(std::uint64_t conn_id, const e2ap::Message& m) {
  if (auto it = conns_.find(conn_id); it != conns_.end()) it->second->link->send_frame(e2ap::frame(m));
}

void Ric::send_north(std::uint64_t conn_id, const north::Message& m) {
  if (auto it = conns_.find(conn_id); it != conns_.end()) it->second->link->send_frame(north::frame(m));
}

void Ric::record_event(InventoryEvent e) {
  inventory_.apply(e);
  events_.push_back(std::move(e));
}

e2ap::RicRequestId Ric::allocate_request_id(std::uint16_t requestor) {
  for (;;) {
    e2ap::RicRequestId rid{requestor, next_instance_++};
    if (next_instance_ == 0) next_instance_ = 1;
    if (subs_.count(rid) == 0 && controls_.count(rid) == 0) return rid;
  }
}

void Ric::log(const std::string& msg) const {
  if (config_.logger) config_.logger->log("ric", msg);
}

// --- introspection ------------------------------------------------------------

std::vector<InventoryRecord> Ric::inventory_snapshot() const {
  std::lock_guard lk(mu_);
  return inventory_.snapshot();
}

std::optional<NodeRecord> Ric::node(const std::string& name) const {
  std::lock_guard lk(mu_);
  if (const auto* rec = inventory_.find(name)) return *rec;
  return std::nullopt;
}

std::vector<InventoryEvent> Ric::event_log() const {
  std::lock_guard lk(mu_);
  return events_;
}

std::vector<SubscriptionRecord> Ric::subscriptions() const {
  std::lock_guard lk(mu_);
  std::vector<SubscriptionRecord> out;
  for (const auto& [_, s] : subs_) out.push_back(s.rec);
  return out;
}

RicStats Ric::stats() const {
  std::lock_guard lk(mu_);
  return stats_;
}

}  // namespace e2dev::ric
