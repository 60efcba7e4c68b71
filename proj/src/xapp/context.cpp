#include "e2dev/xapp/context.hpp"

#include <algorithm>

#include "e2dev/kpm/codec.hpp"
#include "e2dev/ric/ric.hpp"

namespace e2dev::xapp {

namespace north = ric::north;

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::decoded: return "decoded";
    case DecodeStatus::undecoded: return "undecoded";
    case DecodeStatus::malformed: return "malformed";
  }
  return "?";
}

XappContext::XappContext(XappOptions options) : options_(std::move(options)) {
  if (!options_.registry) {
    auto reg = std::make_shared<sm::Registry>();
    sm::register_default_codecs(*reg);
    options_.registry = std::move(reg);
  }
  if (options_.bindings.empty()) options_.bindings = ric::default_bindings();
}

std::unique_ptr<XappContext> XappContext::connect(XappOptions options) {
  if (options.xapp_id.empty() || options.xapp_id.size() > 150) {
    throw ValidationError("xapp_id must be 1..150 characters");
  }
  std::unique_ptr<XappContext> ctx(new XappContext(std::move(options)));
  std::unique_ptr<net::ByteStream> stream;
  for (int attempt = 1;; ++attempt) {
    try {
      stream = net::connect(ctx->options_.ric_endpoint);
      break;
    } catch (const TransportError& e) {
      if (attempt >= ctx->options_.connect_attempts) {
        throw TransportError("xApp " + ctx->options_.xapp_id + ": RIC unreachable at " +
                             ctx->options_.ric_endpoint + ": " + e.what());
      }
      std::this_thread::sleep_for(ctx->options_.retry_delay);
    }
  }
  ctx->link_ = std::make_unique<net::FramedConnection>(std::move(stream), ctx->options_.tracker);
  ctx->reader_ = std::thread([c = ctx.get()] { c->reader_loop(); });

  const auto ack = std::get<north::XAppRegisterAck>(
      ctx->rpc(north::XAppRegister{ctx->options_.xapp_id}, north::type_code(north::XAppRegisterAck{})));
  if (!ack.accepted) throw RegistrationRejected("xApp id '" + ctx->options_.xapp_id + "' rejected by RIC");
  ctx->log("registered as " + ctx->options_.xapp_id);
  return ctx;
}

XappContext::~XappContext() {
  stop();
  close();
}

void XappContext::close() {
  if (link_) link_->close();
  if (reader_.joinable() && reader_.get_id() != std::this_thread::get_id()) reader_.join();
}

void XappContext::reader_loop() {
  for (;;) {
    std::optional<net::Incoming> in;
    try {
      in = link_->receive();
    } catch (const FrameError& e) {
      log(std::string("framing error: ") + e.what());
    }
    if (!in) break;
    north::Message msg;
    try {
      msg = north::decode_payload(in->frame.type, in->frame.payload);
    } catch (const Error& e) {
      log(std::string("bad frame from RIC: ") + e.what());
      continue;
    }
    std::lock_guard lk(mu_);
    if (std::holds_alternative<north::IndicationForward>(msg) ||
        std::holds_alternative<north::SubscriptionEnded>(msg)) {
      queue_.push_back({std::move(msg), std::move(in->ticket)});
    } else if (awaiting_ == in->frame.type && !response_) {
      response_ = std::move(msg);
      response_ticket_ = std::move(in->ticket);
    } else {
      log("dropping unexpected " + std::to_string(in->frame.type) + " from RIC");
      continue;
    }
    cv_.notify_all();
  }
  std::lock_guard lk(mu_);
  link_down_ = true;
  cv_.notify_all();
}

north::Message XappContext::rpc(const north::Message& request, std::uint8_t response_type) {
  std::lock_guard rpc_lk(rpc_mu_);
  std::unique_lock lk(mu_);
  if (link_down_) throw TransportError("RIC connection closed");
  awaiting_ = response_type;
  response_.reset();
  if (!link_->send_frame(north::frame(request))) {
    awaiting_ = 0;
    throw TransportError("RIC connection closed");
  }
  const bool got = cv_.wait_for(lk, options_.rpc_timeout, [&] { return response_.has_value() || link_down_; });
  awaiting_ = 0;
  if (!response_) {
    throw TransportError(got ? "RIC connection closed" : "no response from RIC");
  }
  auto out = std::move(*response_);
  response_.reset();
  // Keep the frame counted as in flight until the caller's state is updated.
  auto ticket = std::move(response_ticket_);
  lk.unlock();
  return out;
}

std::vector<ric::InventoryRecord> XappContext::list_nodes() {
  const auto resp = std::get<north::InventoryResponse>(rpc(north::InventoryRequest{}, 102));
  auto nodes = ric::inventory_from_json(resp.json);
  log("E2 nodes: " + resp.json);
  return nodes;
}

std::shared_ptr<const sm::SmCodec> XappContext::codec_for(std::uint16_t ran_function_id) const {
  return options_.registry->resolve_for_function(options_.bindings, ran_function_id);
}

std::map<std::uint16_t, FunctionInfo> XappContext::available_functions(const std::string& node) {
  const auto resp = std::get<north::FunctionDefsResponse>(rpc(north::FunctionDefsRequest{node}, 104));
  std::map<std::uint16_t, FunctionInfo> out;
  for (const auto& f : resp.functions) {
    FunctionInfo info{f.ran_function_id, std::nullopt, {}, f.definition_hex};
    const auto codec = codec_for(f.ran_function_id);
    if (!codec->is_fallback()) {
      try {
        const auto s = codec->summary(from_hex(f.definition_hex));
        if (const auto* sum = std::get_if<kpm::FunctionSummary>(&s)) {
          info.codec = codec->key();
          info.summary = *sum;
          log("Available functions: " + kpm::format_summary(*sum));
        }
      } catch (const CodecError& e) {
        log("function " + std::to_string(f.ran_function_id) + " definition not decodable: " + e.what());
      }
    }
    out.emplace(f.ran_function_id, std::move(info));
  }
  return out;
}

e2ap::RicRequestId XappContext::subscribe(const std::string& node, std::uint16_t ran_function_id,
                                          const std::vector<std::string>& metrics,
                                          std::uint32_t reporting_period_ms, std::uint32_t granularity_ms) {
  if (metrics.empty()) throw ValidationError("subscribe: metrics must not be empty");
  if (reporting_period_ms < kpm::kPeriodMin || reporting_period_ms > kpm::kPeriodMax) {
    throw ValidationError("subscribe: reporting period must be in [1, 65536] ms");
  }
  if (granularity_ms == 0 || reporting_period_ms % granularity_ms != 0) {
    throw ValidationError("subscribe: granularity " + std::to_string(granularity_ms) +
                          " ms does not divide period " + std::to_string(reporting_period_ms) + " ms");
  }
  const auto codec = codec_for(ran_function_id);
  if (codec->is_fallback()) {
    throw ValidationError("subscribe: no service model codec for ran function " + std::to_string(ran_function_id));
  }

  kpm::ActionDefinition action{kpm::kPerUeStyle, metrics, granularity_ms};
  const auto trigger = codec->encode_event_trigger({reporting_period_ms});
  const auto action_octets = codec->encode_action_definition(action);
  log("Selected functions: " + kpm::format_summary({{action.style_id, metrics}}));
  log("Preparing subscription for gnb: " + node);
  log("event trigger encoded: " + to_hex(trigger));

  const auto resp = std::get<north::SubscribeResponse>(
      rpc(north::SubscribeRequest{node, ran_function_id, to_hex(trigger), to_hex(action_octets)}, 106));
  if (!resp.admitted) {
    log("subscription to " + node + " refused: " + e2ap::to_string(resp.cause));
    throw SubscriptionRefused(resp.cause, std::string("subscription refused: ") + e2ap::to_string(resp.cause));
  }
  {
    std::lock_guard lk(mu_);
    subs_[resp.request_id] = SubInfo{node, ran_function_id, std::move(action), reporting_period_ms};
  }
  log("subscription " + resp.request_id.str() + " admitted");
  return resp.request_id;
}

void XappContext::unsubscribe(const e2ap::RicRequestId& id) {
  {
    std::lock_guard lk(mu_);
    auto it = subs_.find(id);
    if (it == subs_.end() || it->second.closed) return;
    it->second.delete_requested = true;
  }
  rpc(north::SubscriptionDeleteRequest{id}, 111);
  std::lock_guard lk(mu_);
  subs_[id].closed = true;
  log("subscription " + id.str() + " deleted");
}

std::vector<e2ap::RicRequestId> XappContext::active_subscriptions() const {
  std::lock_guard lk(mu_);
  std::vector<e2ap::RicRequestId> out;
  for (const auto& [id, s] : subs_) {
    if (!s.closed) out.push_back(id);
  }
  return out;
}

bool XappContext::send_control(const std::string& node, std::uint16_t ran_function_id, const Octets& header,
                               const Octets& message) {
  const auto r = std::get<north::ControlResult>(
      rpc(north::ControlForward{node, ran_function_id, to_hex(header), to_hex(message)}, 109));
  return r.acked;
}

void XappContext::on_indication(IndicationCallback cb) {
  std::lock_guard lk(mu_);
  on_indication_ = std::move(cb);
}

void XappContext::on_subscription_end(EndCallback cb) {
  std::lock_guard lk(mu_);
  on_end_ = std::move(cb);
}

DecodedIndication XappContext::decode(const north::IndicationForward& f) {
  DecodedIndication d;
  d.request_id = f.request_id;
  d.sn = f.sn;
  d.verdict = f.verdict;
  d.header_hex = f.header_hex;
  d.message_hex = f.message_hex;

  std::optional<SubInfo> info;
  {
    std::lock_guard lk(mu_);
    if (auto it = subs_.find(f.request_id); it != subs_.end()) info = it->second;
  }
  Octets header_octets, message_octets;
  try {
    header_octets = from_hex(f.header_hex);
    message_octets = from_hex(f.message_hex);
  } catch (const CodecError& e) {
    d.status = DecodeStatus::malformed;
    d.error = e.what();
    return d;
  }
  d.header = sm::Opaque{header_octets};
  d.message = sm::Opaque{message_octets};
  if (!info) {
    d.status = DecodeStatus::undecoded;
    return d;
  }
  d.node = info->node;
  d.ran_function_id = info->ran_function_id;
  d.after_delete_request = info->delete_requested;

  const auto codec = codec_for(info->ran_function_id);
  if (codec->is_fallback()) {
    d.status = DecodeStatus::undecoded;
    return d;
  }
  try {
    d.header = codec->decode_indication_header(header_octets);
    auto message = codec->decode_indication_message(message_octets);
    // Every record must carry one value per subscribed metric.
    if (const auto* m = std::get_if<kpm::IndicationMessage>(&message)) {
      const auto width = info->action.metrics.size();
      const auto records = info->reporting_period_ms / info->action.granularity_period_ms;
      auto check = [&](const std::vector<kpm::MeasRecord>& recs) {
        if (recs.size() != records) {
          throw CodecError("expected " + std::to_string(records) + " records, got " + std::to_string(recs.size()));
        }
        for (const auto& r : recs) {
          if (r.values.size() != width) {
            throw CodecError("record width " + std::to_string(r.values.size()) + " does not match " +
                             std::to_string(width) + " subscribed metrics");
          }
        }
      };
      if (const auto* node_level = std::get_if<kpm::NodeLevelReport>(m)) {
        check(node_level->records);
      } else {
        for (const auto& ue : std::get<kpm::PerUeReport>(*m).ue_reports) check(ue.records);
      }
    }
    d.message = std::move(message);
  } catch (const CodecError& e) {
    d.status = DecodeStatus::malformed;
    d.error = e.what();
  }
  return d;
}

void XappContext::dispatch(const north::Message& m) {
  IndicationCallback ind_cb;
  EndCallback end_cb;
  {
    std::lock_guard lk(mu_);
    ind_cb = on_indication_;
    end_cb = on_end_;
  }
  if (const auto* f = std::get_if<north::IndicationForward>(&m)) {
    auto d = decode(*f);
    {
      std::lock_guard lk(mu_);
      ++stats_.indications;
      if (d.status == DecodeStatus::malformed) ++stats_.decode_failures;
      if (d.status == DecodeStatus::undecoded) ++stats_.undecoded;
      if (d.verdict == e2ap::SnVerdict::gap) ++stats_.gaps;
      if (d.verdict == e2ap::SnVerdict::duplicate) ++stats_.duplicates;
    }
    if (d.status == DecodeStatus::malformed) {
      log("indication " + d.request_id.str() + " sn " + std::to_string(d.sn) + " malformed: " + d.error);
    }
    if (ind_cb) ind_cb(d);
  } else if (const auto* e = std::get_if<north::SubscriptionEnded>(&m)) {
    SubscriptionEnd end{e->request_id, "", e->cause};
    {
      std::lock_guard lk(mu_);
      if (auto it = subs_.find(e->request_id); it != subs_.end()) {
        it->second.closed = true;
        end.node = it->second.node;
      }
    }
    log("subscription " + e->request_id.str() + " ended: " + e2ap::to_string(e->cause));
    if (end_cb) end_cb(end);
  }
}

RunResult XappContext::run(Logic logic) {
  RunResult result;
  std::thread logic_thread([&] {
    try {
      if (logic) logic(*this);
    } catch (const std::exception& e) {
      result.logic_failed = true;
      result.error = e.what();
      log(std::string("logic failed: ") + e.what());
      for (const auto& id : active_subscriptions()) {
        try {
          unsubscribe(id);
        } catch (const Error& ue) {
          log("cleanup of " + id.str() + " failed: " + ue.what());
        }
      }
      stop();
    }
  });

  for (;;) {
    Dispatch item;
    {
      std::unique_lock lk(mu_);
      cv_.wait(lk, [&] { return stop_ || !queue_.empty() || link_down_; });
      if (stop_ || queue_.empty()) {
        queue_.clear();  // releases the tickets of anything left undelivered
        break;
      }
      item = std::move(queue_.front());
      queue_.pop_front();
    }
    try {
      dispatch(item.message);
    } catch (const std::exception& e) {
      log(std::string("callback failed: ") + e.what());
    }
  }
  logic_thread.join();
  return result;
}

void XappContext::stop() {
  std::lock_guard lk(mu_);
  stop_ = true;
  cv_.notify_all();
}

XappStats XappContext::stats() const {
  std::lock_guard lk(mu_);
  return stats_;
}

void XappContext::log(const std::string& msg) const {
  if (options_.logger) options_.logger->log("xapp_frame", msg);
}

void XappBase::connect() {
  ctx_ = XappContext::connect(options_);
  ctx_->on_indication([this](const DecodedIndication& d) { handle_indication(d); });
  ctx_->on_subscription_end([this](const SubscriptionEnd& e) { handle_subscription_end(e); });
}

RunResult XappBase::run() {
  return ctx_->run([this](XappContext& c) { logic(c); });
}

void XappBase::stop() {
  if (ctx_) ctx_->stop();
}

void XappBase::close() {
  if (ctx_) ctx_->close();
}

}  // namespace e2dev::xapp
