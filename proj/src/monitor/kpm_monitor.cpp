#include "e2dev/monitor/kpm_monitor.hpp"

#include <algorithm>

namespace e2dev::monitor {

KpmMonitorXapp::KpmMonitorXapp(xapp::XappOptions options, MonitorSettings settings)
    : XappBase(std::move(options)), settings_(std::move(settings)), subscribed_(promise_.get_future().share()) {}

void KpmMonitorXapp::logic(xapp::XappContext& ctx) {
  try {
    std::string node;
    std::uint16_t fid = 0;
    for (const auto& rec : ctx.list_nodes()) {
      if (rec.connection_status != "CONNECTED") continue;
      for (const auto& [id, info] : ctx.available_functions(rec.inventory_name)) {
        if (info.codec && info.codec->sm_name == "KPM" && info.summary.count(kpm::kPerUeStyle) > 0) {
          node = rec.inventory_name;
          fid = id;
          break;
        }
      }
      if (!node.empty()) break;
    }
    if (node.empty()) throw ProtocolError("no connected node offers a KPM function");
    {
      std::lock_guard lk(mu_);
      node_ = node;
    }
    promise_.set_value(ctx.subscribe(node, fid, settings_.metrics, settings_.reporting_period_ms,
                                     settings_.granularity_ms));
  } catch (...) {
    promise_.set_exception(std::current_exception());
    throw;
  }
}

void KpmMonitorXapp::handle_indication(const xapp::DecodedIndication& d) {
  std::lock_guard lk(mu_);
  deliveries_.push_back(d);
}

void KpmMonitorXapp::handle_subscription_end(const xapp::SubscriptionEnd&) {}

std::vector<xapp::DecodedIndication> KpmMonitorXapp::deliveries() const {
  std::lock_guard lk(mu_);
  return deliveries_;
}

std::string KpmMonitorXapp::node() const {
  std::lock_guard lk(mu_);
  return node_;
}

}  // namespace e2dev::monitor
