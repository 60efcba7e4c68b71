#include "e2dev/node/node_sim.hpp"

#include <algorithm>

#include "e2dev/common/error.hpp"
#include "e2dev/kpm/codec.hpp"
#include "e2dev/ric/inventory.hpp"

namespace e2dev::node {

using e2ap::Cause;

NodeSim::NodeSim(NodeConfig config)
    : config_(std::move(config)),
      name_(ric::inventory_name(config_.id)),
      presence_(config_.trace, config_.ue_events),
      definition_octets_(kpm::encode_ran_function_definition(config_.function)) {}

NodeSim::~NodeSim() { stop(); }

void NodeSim::start() {
  std::unique_ptr<net::ByteStream> stream;
  for (int attempt = 1;; ++attempt) {
    try {
      stream = net::connect(config_.ric_endpoint);
      break;
    } catch (const TransportError& e) {
      if (attempt >= config_.connect_attempts) {
        throw TransportError("node " + name_ + ": RIC unreachable at " + config_.ric_endpoint + " after " +
                             std::to_string(attempt) + " attempts: " + e.what());
      }
      std::this_thread::sleep_for(config_.retry_delay);
    }
  }

  e2ap::E2SetupRequest setup{config_.id, {{config_.ran_function_id, definition_octets_, 0}}};
  for (const auto& f : config_.extra_functions) setup.functions.push_back(f);

  std::unique_lock lk(mu_);
  link_ = std::make_unique<net::FramedConnection>(std::move(stream), config_.tracker);
  setup_ok_.reset();
  reader_ = std::thread([this] { reader_loop(); });
  send(setup);
  if (!setup_cv_.wait_for(lk, config_.setup_timeout, [&] { return setup_ok_.has_value(); })) {
    throw ProtocolError("node " + name_ + ": no E2 setup response");
  }
  if (!*setup_ok_) throw ProtocolError("node " + name_ + ": E2 setup refused");
  log("E2 setup complete");
}

void NodeSim::reader_loop() {
  for (;;) {
    std::optional<net::Incoming> in;
    try {
      in = link_->receive();
    } catch (const FrameError& e) {
      log(std::string("framing error: ") + e.what());
    }
    if (!in) break;
    e2ap::Message msg;
    try {
      msg = e2ap::decode_payload(in->frame.type, in->frame.payload);
    } catch (const Error& e) {
      log(std::string("bad frame from RIC: ") + e.what());
      continue;
    }
    std::lock_guard lk(mu_);
    handle(msg);
  }
  std::lock_guard lk(mu_);
  if (!setup_ok_) {
    setup_ok_ = false;
    setup_cv_.notify_all();
  }
}

void NodeSim::handle(const e2ap::Message& m) {
  if (const auto* r = std::get_if<e2ap::E2SetupResponse>(&m)) {
    const bool ok = std::find(r->accepted_ids.begin(), r->accepted_ids.end(), config_.ran_function_id) !=
                    r->accepted_ids.end();
    setup_ok_ = ok;
    setup_cv_.notify_all();
  } else if (std::holds_alternative<e2ap::E2SetupFailure>(m)) {
    setup_ok_ = false;
    setup_cv_.notify_all();
  } else if (const auto* s = std::get_if<e2ap::RicSubscriptionRequest>(&m)) {
    handle_subscription(*s);
  } else if (const auto* d = std::get_if<e2ap::RicSubscriptionDeleteRequest>(&m)) {
    if (subs_.erase(d->request_id) > 0) log("subscription " + d->request_id.str() + " deleted");
    send(e2ap::RicSubscriptionDeleteResponse{d->request_id});
  } else if (const auto* c = std::get_if<e2ap::RicControlRequest>(&m)) {
    controls_.push_back({c->request_id, c->ran_function_id, c->header, c->message});
    log("control " + c->request_id.str() + " header " + to_hex(c->header) + " message " + to_hex(c->message));
    if (c->ack_requested) send(e2ap::RicControlAcknowledge{c->request_id});
  } else if (const auto* e = std::get_if<e2ap::ErrorIndication>(&m)) {
    log(std::string("error indication from RIC: ") + e2ap::to_string(e->cause));
  } else {
    log(std::string("ignoring ") + e2ap::type_name(e2ap::type_code(m)));
  }
}

std::optional<Cause> NodeSim::check_action(const e2ap::RicAction& a, kpm::ActionDefinition& out) const {
  try {
    out = kpm::decode_action_definition(a.definition);
  } catch (const CodecError&) {
    return Cause::unspecified;
  }
  const auto style = std::find_if(config_.function.styles.begin(), config_.function.styles.end(),
                                  [&](const kpm::ReportStyle& s) { return s.style_id == out.style_id; });
  if (out.style_id != kpm::kPerUeStyle || style == config_.function.styles.end()) {
    return Cause::unsupported_function;
  }
  for (const auto& name : out.metrics) {
    if (std::find(style->metrics.begin(), style->metrics.end(), name) == style->metrics.end()) {
      return Cause::unknown_metric;
    }
  }
  return std::nullopt;
}

void NodeSim::handle_subscription(const e2ap::RicSubscriptionRequest& req) {
  if (req.ran_function_id != config_.ran_function_id) {
    send(e2ap::RicSubscriptionFailure{req.request_id, Cause::unsupported_function});
    return;
  }
  kpm::EventTriggerDefinition trigger;
  try {
    trigger = kpm::decode_event_trigger(req.event_trigger);
  } catch (const CodecError& e) {
    log(std::string("bad event trigger: ") + e.what());
    send(e2ap::RicSubscriptionFailure{req.request_id, Cause::unspecified});
    return;
  }
  if (subs_.count(req.request_id) > 0) {
    send(e2ap::RicSubscriptionFailure{req.request_id, Cause::unspecified});
    return;
  }

  // Only one reporting stream per subscription: the first acceptable action
  // is admitted, any further ones are turned away.
  e2ap::RicSubscriptionResponse resp{req.request_id, {}, {}};
  std::optional<Sub> admitted;
  for (const auto& a : req.actions) {
    kpm::ActionDefinition action;
    auto cause = check_action(a, action);
    const auto g = action.granularity_period_ms;
    if (!cause && (g == 0 || trigger.reporting_period_ms % g != 0 ||
                   trigger.reporting_period_ms / g > kpm::kRecordsMax)) {
      cause = Cause::unspecified;
    }
    if (!cause && admitted) cause = Cause::unspecified;
    if (cause) {
      resp.not_admitted.push_back({a.action_id, *cause});
      continue;
    }
    Sub s;
    s.request_id = req.request_id;
    s.ran_function_id = req.ran_function_id;
    s.action_id = a.action_id;
    s.action = std::move(action);
    s.period_ms = trigger.reporting_period_ms;
    const auto phase = config_.report_phase_offset_ms % s.period_ms;
    const auto base = now_ >= phase ? now_ - phase : 0;
    s.next_window = (base + s.period_ms - 1) / s.period_ms * s.period_ms + phase;
    if (s.next_window < now_) s.next_window += s.period_ms;
    admitted = std::move(s);
    resp.admitted_action_ids.push_back(a.action_id);
  }
  if (admitted) {
    log("subscription " + req.request_id.str() + " active, period " + std::to_string(admitted->period_ms) +
        " ms, first window at " + std::to_string(admitted->next_window) + " ms");
    subs_.emplace(req.request_id, std::move(*admitted));
  }
  send(resp);
}

void NodeSim::advance_to(std::uint64_t t_ms) {
  std::lock_guard lk(mu_);
  if (t_ms < now_) throw ValidationError("virtual clock cannot move backwards");
  now_ = t_ms;
  for (;;) {
    // Next window to close, earliest end first, request id as tie-break.
    Sub* next = nullptr;
    for (auto& [rid, s] : subs_) {
      if (s.next_window + s.period_ms > t_ms) continue;
      if (!next || s.next_window + s.period_ms < next->next_window + next->period_ms) next = &s;
    }
    if (!next) break;
    emit(*next);
  }
}

void NodeSim::emit(Sub& sub) {
  auto [header, message] = build_indication(config_.trace, presence_, sub.action,
                                            ReportWindow{sub.next_window, sub.period_ms}, name_,
                                            config_.model, &unknown_metrics_);
  sub.next_window += sub.period_ms;
  const auto sn = sub.next_sn++;

  e2ap::RicIndication ind{sub.request_id, sub.action_id, sn, kpm::encode_indication_header(header),
                          kpm::encode_indication_message(message)};
  if (config_.fault_injector) config_.fault_injector(sn, ind.message);
  auto bytes = e2ap::frame(ind);
  if (link_) link_->send_frame(bytes);
  frames_.push_back(std::move(bytes));
  sent_.push_back({sub.request_id, sn, std::move(header), std::move(message)});
}

void NodeSim::disconnect() {
  std::unique_lock lk(mu_);
  if (link_) link_->close();
  subs_.clear();
  lk.unlock();
  if (reader_.joinable()) reader_.join();
}

void NodeSim::stop() { disconnect(); }

void NodeSim::send(const e2ap::Message& m) {
  if (link_) link_->send_frame(e2ap::frame(m));
}

void NodeSim::log(const std::string& msg) const {
  if (config_.logger) config_.logger->log("e2node", name_ + ": " + msg);
}

std::string NodeSim::inventory_name() const { return name_; }

std::uint64_t NodeSim::now() const {
  std::lock_guard lk(mu_);
  return now_;
}

std::size_t NodeSim::active_subscriptions() const {
  std::lock_guard lk(mu_);
  return subs_.size();
}

std::vector<Octets> NodeSim::indication_frames() const {
  std::lock_guard lk(mu_);
  return frames_;
}

std::vector<SentIndication> NodeSim::sent_indications() const {
  std::lock_guard lk(mu_);
  return sent_;
}

std::vector<ControlRecord> NodeSim::control_log() const {
  std::lock_guard lk(mu_);
  return controls_;
}

std::uint64_t NodeSim::unknown_metric_warnings() const {
  std::lock_guard lk(mu_);
  return unknown_metrics_;
}

Octets NodeSim::function_definition_octets() const { return definition_octets_; }

}  // namespace e2dev::node
